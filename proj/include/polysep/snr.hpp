#pragma once

#include <cmath>

namespace polysep {

// Signal-to-noise ratio point. gamma is the linear symbol SNR E_s/N_0; the
// per-bit forms divide by log2(M) before converting to dB.
struct SnrPoint {
    double gamma;

    static SnrPoint from_linear(double g) { return {g}; }
    static SnrPoint from_db(double db) { return {std::pow(10.0, db / 10.0)}; }
    static SnrPoint from_gamma_b_db(double gb_db, double log2_m) {
        return {std::pow(10.0, gb_db / 10.0) * log2_m};
    }

    double gamma_db() const { return 10.0 * std::log10(gamma); }
    double gamma_b(double log2_m) const { return gamma / log2_m; }
    double gamma_b_db(double log2_m) const { return 10.0 * std::log10(gamma / log2_m); }
};

}  // namespace polysep

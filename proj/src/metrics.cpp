#include "polysep/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace polysep {

double power_efficiency(double d_over_sqrt_es, int m) {
    if (!(d_over_sqrt_es > 0)) throw std::invalid_argument("power_efficiency: d > 0 required");
    if (m < 2) throw std::invalid_argument("power_efficiency: M >= 2 required");
    return d_over_sqrt_es * d_over_sqrt_es * std::log2(double(m)) / 4.0;
}

double spectral_efficiency(int m, int n) {
    if (m < 2 || n < 1) throw std::invalid_argument("spectral_efficiency: M >= 2, n >= 1");
    return std::log2(double(m)) / double(n);
}

EfficiencyReport efficiency_report(double d_over_sqrt_es, int m, int n) {
    const double lin = power_efficiency(d_over_sqrt_es, m);
    return {lin, 10.0 * std::log10(lin), spectral_efficiency(m, n)};
}

double cp_simplex_gap(double n) {
    if (!(n >= 2)) throw std::invalid_argument("cp_simplex_gap: n >= 2 required");
    return n * std::log2(2.0 * n) / ((n + 1.0) * std::log2(n + 1.0));
}

GapMaximum gap_maximizer() {
    int best = 2;
    double bestv = cp_simplex_gap(2.0);
    for (int k = 3; k <= 1000; ++k) {
        const double v = cp_simplex_gap(double(k));
        if (v > bestv) {
            bestv = v;
            best = k;
        }
    }
    // Golden-section maximization on [20, 30]; the ratio is smooth and
    // unimodal there, so the bracket shrinks geometrically.
    const double invphi = 0.6180339887498949;
    double a = 20.0, b = 30.0;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = cp_simplex_gap(x1), f2 = cp_simplex_gap(x2);
    while (b - a > 1e-8) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = cp_simplex_gap(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = cp_simplex_gap(x1);
        }
    }
    return {best, 0.5 * (a + b), 10.0 * std::log10(bestv)};
}

}  // namespace polysep

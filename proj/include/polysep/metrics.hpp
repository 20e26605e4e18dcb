#pragma once

namespace polysep {

// Power efficiency (d^2/E_s) * log2(M) / 4: asymptotic dB gain over BPSK.
double power_efficiency(double d_over_sqrt_es, int m);

// Spectral efficiency log2(M)/n in bits per dimension.
double spectral_efficiency(int m, int n);

struct EfficiencyReport {
    double g_b_linear;
    double g_b_db;
    double s;
};

EfficiencyReport efficiency_report(double d_over_sqrt_es, int m, int n);

// Crosspolytope-to-simplex power-efficiency ratio (linear):
// n*log2(2n) / ((n+1)*log2(n+1)), defined for real n >= 2.
double cp_simplex_gap(double n);

struct GapMaximum {
    int n_int;      // integer argmax over [2, 1000]
    double n_real;  // real maximizer by golden-section search
    double gap_db;  // peak ratio in dB (at n_int)
};

GapMaximum gap_maximizer();

}  // namespace polysep

#pragma once

#include "polysep/geometry.hpp"
#include "polysep/snr.hpp"

namespace polysep {

// Each exact formula exists in two algebraically identical forms: `naive` is
// the direct expression (cancels catastrophically at high SNR), `stable` is
// the rearrangement whose terms are all small and positive-leading.
enum class Form { naive, stable };

enum class Method { naive_exact, stable_exact, union_bound_m, monte_carlo };

struct SepValue {
    long double p;    // probability in [0,1]
    Method method;
    long double err;  // quadrature error estimate, CI half-width, or (for a
                      // clamped union bound) the raw unclamped value
};

// Hypercube 2^n-point SEP: naive 1-[1-Q(sqrt(2g/n))]^n, stable binomial form.
SepValue sep_cube(int n, SnrPoint snr, Form form);

// Crosspolytope (2n points): Gaussian-centered integral on (0,inf).
SepValue sep_crosspolytope(int n, SnrPoint snr, Form form);

// Simplex (n+1 points): Gaussian-centered integral on (-inf,inf),
// center sqrt(2*g*(n+1)/n).
SepValue sep_simplex(int n, SnrPoint snr, Form form);

// M-PSK single-integral form on (0, pi - pi/M]. M = 2 allowed as a
// validation alias for BPSK.
SepValue sep_mpsk(int m, SnrPoint snr);

// 24-cell SEP, center sqrt(g) on (0,inf).
SepValue sep_24cell(SnrPoint snr, Form form);

// A * Q(sqrt(d^2 * g / 2)) at unit symbol energy, evaluated in the log domain
// so it stays finite at any SNR; p clamps to 1, err keeps the raw value.
SepValue union_bound(int a, double d_over_sqrt_es, SnrPoint snr);

// Routes a kind to its exact formula or union bound. Throws NoExactFormula
// when an exact method is requested for icosahedron/dodecahedron/600-cell/
// 120-cell; monte_carlo is not dispatchable here (needs trials and a seed).
SepValue sep_dispatch(Kind kind, int size, SnrPoint snr, Method method);

}  // namespace polysep

#pragma once

namespace polysep {

// Gaussian tail probability Q(x) = P(Z > x) for Z ~ N(0,1).
// Accurate over the full double range; underflows to 0 near x ~ 38.
double q(double x);

// Standard normal density.
double gauss_pdf(double x);

// ln Q(x), finite far past the underflow point of q() (e.g. log_q(200) ~ -2.0e4).
// Uses erfc below the tail crossover and a Mills-ratio continued fraction above it.
double log_q(double x);

// Inverse of the standard normal CDF: probit(p) = x with P(Z <= x) = p.
// Rational approximation polished with one Newton step; p in (0,1).
double probit(double p);

namespace detail {

// Quad-precision Gaussian tail, used inside the integral-based SEP formulas where
// products like Q(x)*exp(-(x-c)^2/2) must keep ~30 significant digits.
__float128 q128(__float128 x);

// exp(-u^2/2) in quad precision.
__float128 gauss_kernel128(__float128 u);

// ln Q(x) via erfc (valid for moderate x) and via the tail expansion (x >= 8);
// exposed separately so the seam can be tested.
double log_q_direct(double x);
double log_q_tail(double x);

}  // namespace detail

}  // namespace polysep

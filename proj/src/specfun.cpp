#include "polysep/specfun.hpp"

#include <quadmath.h>

#include <cmath>
#include <stdexcept>

namespace polysep {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kLnSqrt2Pi = 0.91893853320467274178;
constexpr double kTailCross = 8.0;  // erfc-based below, Mills-ratio tail above

// Mills ratio R(x) = Q(x)/f(x) = 1/(x + 1/(x + 2/(x + 3/(...)))), evaluated
// with the modified Lentz scheme. Valid for x > 0, efficient for x >~ 5.
template <typename Real>
Real mills_ratio_cf(Real x, Real eps, int max_iter) {
    const Real tiny = Real(1e-60);
    Real f = x, c = x, d = 0;
    for (int i = 1; i <= max_iter; ++i) {
        const Real a = Real(i);
        d = x + a * d;
        if (d == 0) d = tiny;
        d = 1 / d;
        c = x + a / c;
        if (c == 0) c = tiny;
        const Real delta = c * d;
        f *= delta;
        Real dev = delta - 1;
        if (dev < 0) dev = -dev;
        if (dev < eps) break;
    }
    return 1 / f;
}

// Asymptotic Mills ratio R(x) = (1/x) * sum (-1)^k (2k-1)!!/x^{2k}; the series
// is enveloping, so truncating at a term below eps bounds the error by eps.
template <typename Real>
Real mills_ratio_asymptotic(Real x, Real eps) {
    const Real inv_x2 = 1 / (x * x);
    Real term = 1, sum = 1;
    for (int k = 1; k <= 80; ++k) {
        term *= -Real(2 * k - 1) * inv_x2;
        sum += term;
        Real mag = term < 0 ? -term : term;
        if (mag < eps) break;
    }
    return sum / x;
}

}  // namespace

double gauss_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double q(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

namespace detail {

double log_q_direct(double x) { return std::log(q(x)); }

double log_q_tail(double x) {
    const double r = x < 25.0 ? mills_ratio_cf<double>(x, 1e-17, 300)
                              : mills_ratio_asymptotic<double>(x, 1e-19);
    return -0.5 * x * x - kLnSqrt2Pi + std::log(r);
}

__float128 gauss_kernel128(__float128 u) { return expq(-0.5Q * u * u); }

__float128 q128(__float128 x) {
    static const __float128 inv_sqrt2 = 1.0Q / sqrtq(2.0Q);
    static const __float128 inv_sqrt2pi = 1.0Q / sqrtq(2.0Q * M_PIq);
    if (x < 8.0Q) return 0.5Q * erfcq(x * inv_sqrt2);
    const __float128 r = x < 25.0Q
                             ? mills_ratio_cf<__float128>(x, 1e-35Q, 800)
                             : mills_ratio_asymptotic<__float128>(x, 1e-37Q);
    return inv_sqrt2pi * gauss_kernel128(x) * r;
}

}  // namespace detail

double log_q(double x) {
    return x < kTailCross ? detail::log_q_direct(x) : detail::log_q_tail(x);
}

namespace {

// Rational approximation to the inverse normal CDF (Acklam's coefficients),
// relative error ~1e-9; polished by the caller.
double probit_estimate(double p) {
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        const double u = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
               ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    if (p <= 1.0 - plow) {
        const double u = p - 0.5, r = u * u;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double u = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
           ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
}

}  // namespace

double probit(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("probit: p must lie in (0,1)");
    if (p == 0.5) return 0.0;
    if (p > 0.5) return -probit(1.0 - p);
    // p < 0.5: solve Q(y) = p for y > 0 (Newton in the tail keeps full
    // relative accuracy where 1-p would cancel), then reflect.
    double y = -probit_estimate(p);
    y += (q(y) - p) / gauss_pdf(y);
    return -y;
}

}  // namespace polysep

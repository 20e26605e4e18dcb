#include "polysep/analytic_sep.hpp"

#include <quadmath.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "polysep/quadrature.hpp"
#include "polysep/specfun.hpp"

namespace polysep {

namespace {

using detail::gauss_kernel128;
using detail::q128;
using quad128 = detail::quad_result_t<__float128>;
using fn128 = std::function<__float128(__float128)>;

const __float128 kInvSqrt2Pi128 = 1.0Q / sqrtq(2.0Q * M_PIq);
const __float128 kSqrt2OverPi128 = sqrtq(2.0Q / M_PIq);
const __float128 kSqrt32OverPi128 = sqrtq(32.0Q / M_PIq);

// Tolerances for the quad-precision inner integrals. The naive forms need a
// deep absolute floor because their final subtraction from 1 must leave ~20
// correct digits; the stable forms are pure relative targets.
const __float128 kNaiveRel = 1e-18Q;
const __float128 kNaiveAbs = 1e-26Q;
const __float128 kStableRel = 1e-20Q;
const double kInf = std::numeric_limits<double>::infinity();

long double clamp_prob(long double p) {
    if (p < 0.0L) return 0.0L;
    if (p > 1.0L) return 1.0L;
    return p;
}

// Neumaier-compensated accumulator for the alternating binomial sums.
struct comp_sum128 {
    __float128 sum = 0, comp = 0;
    void add(__float128 v) {
        const __float128 t = sum + v;
        if (fabsq(sum) >= fabsq(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    __float128 total() const { return sum + comp; }
};

// bins[i] = C(n, i+1) for i = 0..n-1, exact in quad precision for n <= 64.
std::vector<__float128> binom_tail(int n) {
    std::vector<__float128> bins(n);
    __float128 cur = n;
    bins[0] = cur;
    for (int i = 1; i < n; ++i) {
        cur = cur * __float128(n - i) / __float128(i + 1);
        bins[i] = cur;
    }
    return bins;
}

__float128 ipow128(__float128 base, int e) {
    __float128 r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Subdivision seeds for integrands of the form Q-polynomial(x) * K(x - c):
// the Q(x)*K(x-c) product peaks near c/2, the kernel near c; cover both with
// inner and outer shoulders so high-SNR spikes cannot fall between nodes.
std::vector<double> kernel_breakpoints(double c) {
    std::vector<double> bp;
    for (double off : {-10.0, -3.0, 0.0, 3.0, 10.0}) bp.push_back(0.5 * c + off);
    bp.push_back(0.75 * c);
    for (double off : {-10.0, -3.0, 0.0, 3.0, 10.0, 20.0}) bp.push_back(c + off);
    return bp;
}

struct integral_sep {
    __float128 p;
    __float128 err;
};

SepValue pack(const integral_sep& v, Method method) {
    return {clamp_prob((long double)v.p), method, (long double)v.err};
}

}  // namespace

SepValue sep_cube(int n, SnrPoint snr, Form form) {
    if (n < 1) throw std::invalid_argument("sep_cube: n >= 1 required");
    if (!(snr.gamma >= 0)) throw std::invalid_argument("sep_cube: gamma >= 0 required");
    const double arg = std::sqrt(2.0 * snr.gamma / n);
    if (form == Form::naive) {
        const double p = 1.0 - std::pow(1.0 - q(arg), double(n));
        return {clamp_prob((long double)p), Method::naive_exact, 0.0L};
    }
    const __float128 qq = q128(arg);
    const auto bins = binom_tail(n);
    comp_sum128 s;
    __float128 pw = 1;
    for (int i = 0; i < n; ++i) {
        s.add(bins[i] * pw);
        pw *= -qq;
    }
    return pack({qq * s.total(), 0}, Method::stable_exact);
}

SepValue sep_crosspolytope(int n, SnrPoint snr, Form form) {
    if (n < 2) throw std::invalid_argument("sep_crosspolytope: n >= 2 required");
    if (!(snr.gamma >= 0)) throw std::invalid_argument("sep_crosspolytope: gamma >= 0 required");
    const __float128 c = sqrtq(2.0Q * __float128(snr.gamma));
    const auto bp = kernel_breakpoints((double)c);

    if (form == Form::naive) {
        fn128 f = [n, c](__float128 x) {
            return ipow128(1 - 2 * q128(x), n - 1) * gauss_kernel128(x - c);
        };
        const quad128 r = detail::integrate_adaptive<__float128>(
            f, 0.0, kInf, kNaiveRel, kNaiveAbs, kQuadMaxEvals, bp);
        return pack({1 - kInvSqrt2Pi128 * r.value, kInvSqrt2Pi128 * r.abs_error_estimate},
                    Method::naive_exact);
    }

    const auto bins = binom_tail(n - 1);  // C(n-1, i+1), i = 0..n-2
    fn128 f = [n, c, &bins](__float128 x) {
        const __float128 qx = q128(x);
        comp_sum128 s;
        __float128 pw = 1;
        for (int i = 0; i <= n - 2; ++i) {
            s.add(bins[i] * pw);
            pw *= -2 * qx;
        }
        return qx * gauss_kernel128(x - c) * s.total();
    };
    const quad128 r = detail::integrate_adaptive<__float128>(
        f, 0.0, kInf, kStableRel, 0.0Q, kQuadMaxEvals, bp);
    return pack({q128(c) + kSqrt2OverPi128 * r.value, kSqrt2OverPi128 * r.abs_error_estimate},
                Method::stable_exact);
}

SepValue sep_simplex(int n, SnrPoint snr, Form form) {
    if (n < 1) throw std::invalid_argument("sep_simplex: n >= 1 required");
    if (!(snr.gamma >= 0)) throw std::invalid_argument("sep_simplex: gamma >= 0 required");
    const __float128 c = sqrtq(2.0Q * __float128(snr.gamma) * (n + 1) / n);
    const auto bp = kernel_breakpoints((double)c);

    if (form == Form::naive) {
        fn128 f = [n, c](__float128 x) {
            return ipow128(1 - q128(x), n) * gauss_kernel128(x - c);
        };
        const quad128 r = detail::integrate_adaptive<__float128>(
            f, -kInf, kInf, kNaiveRel, kNaiveAbs, kQuadMaxEvals, bp);
        return pack({1 - kInvSqrt2Pi128 * r.value, kInvSqrt2Pi128 * r.abs_error_estimate},
                    Method::naive_exact);
    }

    const auto bins = binom_tail(n);
    fn128 f = [n, c, &bins](__float128 x) {
        const __float128 qx = q128(x);
        comp_sum128 s;
        __float128 pw = 1;
        for (int i = 0; i < n; ++i) {
            s.add(bins[i] * pw);
            pw *= -qx;
        }
        return qx * gauss_kernel128(x - c) * s.total();
    };
    const quad128 r = detail::integrate_adaptive<__float128>(
        f, -kInf, kInf, kStableRel, 0.0Q, kQuadMaxEvals, bp);
    return pack({kInvSqrt2Pi128 * r.value, kInvSqrt2Pi128 * r.abs_error_estimate},
                Method::stable_exact);
}

SepValue sep_mpsk(int m, SnrPoint snr) {
    if (m < 2) throw std::invalid_argument("sep_mpsk: M >= 2 required");
    if (!(snr.gamma >= 0)) throw std::invalid_argument("sep_mpsk: gamma >= 0 required");
    const double zmax = M_PI - M_PI / m;
    const __float128 s = sinq(M_PIq / m);
    const __float128 gs2 = __float128(snr.gamma) * s * s;
    fn128 f = [gs2](__float128 z) {
        const __float128 sz = sinq(z);
        return expq(-gs2 / (sz * sz));
    };

    // The integrand peaks where sin z is largest: at z = pi/2 for M >= 3
    // (interior), at the right endpoint for M = 2. Near z -> 0 it vanishes
    // superexponentially with scale sqrt(gamma)*sin(pi/M).
    std::vector<double> bp{0.25 * M_PI, 0.5 * zmax, 0.75 * zmax};
    if (snr.gamma > 0) {
        const double zleft = std::sqrt((double)gs2);
        for (double fac : {0.3, 1.0, 3.0}) bp.push_back(zleft * fac);
        const double peak = std::min(M_PI_2, zmax);
        const double sig = 1.0 / std::sqrt(2.0 * (double)gs2);
        for (double k : {-10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0})
            bp.push_back(peak + k * sig);
    }
    const quad128 r = detail::integrate_adaptive<__float128>(
        f, 0.0, zmax, kStableRel, 0.0Q, kQuadMaxEvals, bp);
    return pack({r.value / M_PIq, r.abs_error_estimate / M_PIq}, Method::stable_exact);
}

SepValue sep_24cell(SnrPoint snr, Form form) {
    if (!(snr.gamma >= 0)) throw std::invalid_argument("sep_24cell: gamma >= 0 required");
    const __float128 c = sqrtq(__float128(snr.gamma));
    const auto bp = kernel_breakpoints((double)c);

    if (form == Form::naive) {
        fn128 f = [c](__float128 x) {
            const __float128 one_minus_2q = 1 - 2 * q128(x);
            return gauss_kernel128(x - c) * one_minus_2q * one_minus_2q * q128(x - c);
        };
        const quad128 r = detail::integrate_adaptive<__float128>(
            f, 0.0, kInf, kNaiveRel, kNaiveAbs, kQuadMaxEvals, bp);
        return pack({1 - kSqrt2OverPi128 * r.value, kSqrt2OverPi128 * r.abs_error_estimate},
                    Method::naive_exact);
    }

    fn128 f = [c](__float128 x) {
        const __float128 qx = q128(x);
        return gauss_kernel128(x - c) * qx * (1 - qx) * q128(x - c);
    };
    const quad128 r = detail::integrate_adaptive<__float128>(
        f, 0.0, kInf, kStableRel, 0.0Q, kQuadMaxEvals, bp);
    const __float128 qc = q128(c);
    return pack({qc * (2 - qc) + kSqrt32OverPi128 * r.value,
                 kSqrt32OverPi128 * r.abs_error_estimate},
                Method::stable_exact);
}

SepValue union_bound(int a, double d_over_sqrt_es, SnrPoint snr) {
    if (a < 1) throw std::invalid_argument("union_bound: A >= 1 required");
    if (!(d_over_sqrt_es > 0)) throw std::invalid_argument("union_bound: d > 0 required");
    if (!(snr.gamma >= 0)) throw std::invalid_argument("union_bound: gamma >= 0 required");
    const double arg = d_over_sqrt_es * std::sqrt(0.5 * snr.gamma);
    const long double raw = expl((long double)std::log(double(a)) + (long double)log_q(arg));
    return {raw > 1.0L ? 1.0L : raw, Method::union_bound_m, raw};
}

SepValue sep_dispatch(Kind kind, int size, SnrPoint snr, Method method) {
    if (method == Method::monte_carlo)
        throw std::invalid_argument(
            "monte_carlo is not dispatchable here; use simulate_sep");
    if (method == Method::union_bound_m) {
        const TableParams tp = table_params(kind, size);
        return union_bound(tp.a, tp.d_over_sqrt_es, snr);
    }
    const Form form = method == Method::naive_exact ? Form::naive : Form::stable;
    switch (kind) {
        case Kind::polygon: return sep_mpsk(size, snr);
        case Kind::cube: return sep_cube(size, snr, form);
        case Kind::crosspolytope: return sep_crosspolytope(size, snr, form);
        case Kind::simplex: return sep_simplex(size, snr, form);
        case Kind::cell24: return sep_24cell(snr, form);
        default:
            throw NoExactFormula(kind_to_string(kind) +
                                 " has no exact SEP formula; use the union bound "
                                 "or simulation");
    }
}

}  // namespace polysep

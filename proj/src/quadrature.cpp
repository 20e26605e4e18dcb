#include "polysep/quadrature.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

namespace polysep {
namespace detail {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule: positive abscissas in
// descending order (index 7 is the center); odd indices are the Gauss nodes.
// Stored as strings so both the double and the quad instantiation parse them
// at full precision.
const char* const kXgkStr[8] = {
    "0.9914553711208126392068546975263285166420",
    "0.9491079123427585245261896840478512624008",
    "0.8648644233597690727897127886409262012110",
    "0.7415311855993944398638647732807884070741",
    "0.5860872354676911302941448382587295984368",
    "0.4058451513773971669066064120769614633474",
    "0.2077849550078984676006894037732449134798",
    "0",
};
const char* const kWgkStr[8] = {
    "0.02293532201052922496373200805896959199356",
    "0.06309209262997855329070066318920428666507",
    "0.1047900103222501838398763225415180174438",
    "0.1406532597155259187451895905102379203999",
    "0.1690047266392679028265834265985502841062",
    "0.1903505780647854099132564024210136828261",
    "0.2044329400752988924141619992346490847165",
    "0.2094821410847278280129991748917142636978",
};
const char* const kWgStr[4] = {
    "0.1294849661688696932706114326790820183286",
    "0.2797053914892766679014677714237795824869",
    "0.3818300505051189449503697754889751338784",
    "0.4179591836734693877551020408163265306122",
};

template <typename Real>
struct real_ops;

template <>
struct real_ops<double> {
    static double parse(const char* s) { return std::strtod(s, nullptr); }
    static double abs(double x) { return std::fabs(x); }
    static double sqrt(double x) { return std::sqrt(x); }
    static constexpr double eps() { return std::numeric_limits<double>::epsilon(); }
    static constexpr double min_norm() { return std::numeric_limits<double>::min(); }
};

template <>
struct real_ops<__float128> {
    static __float128 parse(const char* s) { return strtoflt128(s, nullptr); }
    static __float128 abs(__float128 x) { return fabsq(x); }
    static __float128 sqrt(__float128 x) { return sqrtq(x); }
    static __float128 eps() { return FLT128_EPSILON; }
    static __float128 min_norm() { return FLT128_MIN; }
};

template <typename Real>
struct gk_nodes {
    Real xgk[8], wgk[8], wg[4];
    gk_nodes() {
        for (int i = 0; i < 8; ++i) {
            xgk[i] = real_ops<Real>::parse(kXgkStr[i]);
            wgk[i] = real_ops<Real>::parse(kWgkStr[i]);
        }
        for (int i = 0; i < 4; ++i) wg[i] = real_ops<Real>::parse(kWgStr[i]);
    }
    static const gk_nodes& get() {
        static const gk_nodes nodes;
        return nodes;
    }
};

enum class MapKind { identity, upper_inf, lower_inf, both_inf };

// Transformed integrand: infinite ranges are pulled back to a finite t-domain
// (t/(1-t) for one-sided, t/(1-t^2) for two-sided) with the Jacobian applied.
template <typename Real>
struct mapped_fn {
    const std::function<Real(Real)>* g;
    MapKind map;
    Real finite_end;  // lower bound for upper_inf, upper bound for lower_inf

    Real operator()(Real t) const {
        switch (map) {
            case MapKind::identity:
                return (*g)(t);
            case MapKind::upper_inf: {
                const Real om = 1 - t;
                return (*g)(finite_end + t / om) / (om * om);
            }
            case MapKind::lower_inf: {
                const Real om = 1 - t;
                return (*g)(finite_end - t / om) / (om * om);
            }
            case MapKind::both_inf: {
                const Real om = 1 - t * t;
                return (*g)(t / om) * (1 + t * t) / (om * om);
            }
        }
        return 0;
    }
};

template <typename Real>
struct gk_estimate {
    Real integral, err;
};

// One (7,15) pair on [a,b] with the standard error model: the raw |K-G|
// difference is rescaled by the integrand's variation so smooth pieces are
// not over- or under-trusted, with a floor at 50 ulps of the L1 mass.
template <typename Real>
gk_estimate<Real> gk15(const mapped_fn<Real>& f, Real a, Real b,
                       std::int64_t& evals) {
    using ops = real_ops<Real>;
    const auto& nd = gk_nodes<Real>::get();
    const Real center = (a + b) / 2;
    const Real hlen = (b - a) / 2;
    const Real abs_hlen = ops::abs(hlen);

    Real fv1[7], fv2[7];
    const Real fc = f(center);
    Real resg = nd.wg[3] * fc;
    Real resk = nd.wgk[7] * fc;
    Real resabs = ops::abs(resk);
    for (int j = 0; j < 7; ++j) {
        const Real dx = hlen * nd.xgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const Real fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) resg += nd.wg[j / 2] * fsum;
        resk += nd.wgk[j] * fsum;
        resabs += nd.wgk[j] * (ops::abs(fv1[j]) + ops::abs(fv2[j]));
    }
    const Real reskh = resk / 2;
    Real resasc = nd.wgk[7] * ops::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += nd.wgk[j] * (ops::abs(fv1[j] - reskh) + ops::abs(fv2[j] - reskh));

    evals += 15;
    const Real integral = resk * hlen;
    resabs *= abs_hlen;
    resasc *= abs_hlen;
    Real err = ops::abs((resk - resg) * hlen);
    if (resasc != 0 && err != 0) {
        const Real scaled = 200 * err / resasc;
        const Real damp = scaled < 1 ? scaled * ops::sqrt(scaled) : Real(1);
        err = resasc * damp;
    }
    const Real eps50 = 50 * ops::eps();
    if (resabs > ops::min_norm() / eps50) err = std::max(err, eps50 * resabs);
    return {integral, err};
}

template <typename Real>
struct piece {
    Real a, b, val, err;
};

// Max-heap priority: largest error first, then smaller left endpoint, so the
// refinement order (and thus the result) is fully deterministic.
template <typename Real>
bool piece_less(const piece<Real>& x, const piece<Real>& y) {
    if (x.err != y.err) return x.err < y.err;
    return x.a > y.a;
}

template <typename Real>
Real neumaier_total(std::vector<piece<Real>> v, Real piece<Real>::*field) {
    std::sort(v.begin(), v.end(), [](const piece<Real>& x, const piece<Real>& y) {
        return x.a < y.a || (x.a == y.a && x.b < y.b);
    });
    Real sum = 0, comp = 0;
    for (const auto& p : v) {
        const Real x = p.*field;
        const Real t = sum + x;
        if (real_ops<Real>::abs(sum) >= real_ops<Real>::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

// Map an abscissa from the original variable into the t-domain.
double map_to_t(double x, MapKind map, double finite_end) {
    switch (map) {
        case MapKind::identity:
            return x;
        case MapKind::upper_inf: {
            const double u = x - finite_end;
            return u / (1.0 + u);
        }
        case MapKind::lower_inf: {
            const double u = finite_end - x;
            return u / (1.0 + u);
        }
        case MapKind::both_inf: {
            if (x == 0.0) return 0.0;
            return (std::sqrt(1.0 + 4.0 * x * x) - 1.0) / (2.0 * x);
        }
    }
    return x;
}

}  // namespace

template <typename Real>
quad_result_t<Real> integrate_adaptive(const std::function<Real(Real)>& g,
                                       double lower, double upper,
                                       Real rel_tol, Real abs_tol,
                                       std::int64_t max_evals,
                                       const std::vector<double>& breakpoints) {
    using ops = real_ops<Real>;
    if (!(lower < upper)) throw std::invalid_argument("integrate: requires lower < upper");
    if (!(rel_tol > 0) && !(abs_tol > 0))
        throw std::invalid_argument("integrate: tolerances must not both be zero");

    const bool lo_inf = std::isinf(lower), hi_inf = std::isinf(upper);
    MapKind map = MapKind::identity;
    double finite_end = 0.0;
    double t_lo, t_hi;
    if (lo_inf && hi_inf) {
        map = MapKind::both_inf;
        t_lo = -1.0;
        t_hi = 1.0;
    } else if (hi_inf) {
        map = MapKind::upper_inf;
        finite_end = lower;
        t_lo = 0.0;
        t_hi = 1.0;
    } else if (lo_inf) {
        map = MapKind::lower_inf;
        finite_end = upper;
        t_lo = 0.0;
        t_hi = 1.0;
    } else {
        t_lo = lower;
        t_hi = upper;
    }

    // Initial boundaries: mapped breakpoints strictly inside the t-domain,
    // or a uniform 8-way split when none are given.
    std::vector<double> bounds;
    bounds.push_back(t_lo);
    if (breakpoints.empty()) {
        for (int i = 1; i < 8; ++i) bounds.push_back(t_lo + (t_hi - t_lo) * i / 8.0);
    } else {
        std::vector<double> ts;
        for (double x : breakpoints) {
            const double t = map_to_t(x, map, finite_end);
            if (t > t_lo && t < t_hi) ts.push_back(t);
        }
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        bounds.insert(bounds.end(), ts.begin(), ts.end());
    }
    bounds.push_back(t_hi);

    mapped_fn<Real> f{&g, map, Real(finite_end)};
    std::int64_t evals = 0;
    std::vector<piece<Real>> heap, frozen;
    Real total = 0, toterr = 0;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const Real a = Real(bounds[i]), b = Real(bounds[i + 1]);
        const auto est = gk15(f, a, b, evals);
        heap.push_back({a, b, est.integral, est.err});
        total += est.integral;
        toterr += est.err;
    }
    std::make_heap(heap.begin(), heap.end(), piece_less<Real>);

    auto tolerance = [&]() {
        const Real need = rel_tol * ops::abs(total);
        return need > abs_tol ? need : abs_tol;
    };

    while (toterr > tolerance()) {
        if (heap.empty() || evals + 30 > max_evals) {
            throw NonConvergence(
                "quadrature did not reach tolerance: error estimate " +
                std::to_string(double(toterr)) + " after " +
                std::to_string(evals) + " evaluations");
        }
        std::pop_heap(heap.begin(), heap.end(), piece_less<Real>);
        piece<Real> worst = heap.back();
        heap.pop_back();

        const Real scale = std::max(ops::abs(worst.a), ops::abs(worst.b));
        if (ops::abs(worst.b - worst.a) <= 8 * ops::eps() * std::max(scale, Real(1))) {
            // Piece is at resolution limit; keep its contribution but stop
            // splitting it. If such pieces dominate the error we cannot
            // converge and the budget check above will eventually throw.
            frozen.push_back(worst);
            continue;
        }

        const Real mid = (worst.a + worst.b) / 2;
        const auto left = gk15(f, worst.a, mid, evals);
        const auto right = gk15(f, mid, worst.b, evals);
        total += left.integral + right.integral - worst.val;
        toterr += left.err + right.err - worst.err;
        heap.push_back({worst.a, mid, left.integral, left.err});
        std::push_heap(heap.begin(), heap.end(), piece_less<Real>);
        heap.push_back({mid, worst.b, right.integral, right.err});
        std::push_heap(heap.begin(), heap.end(), piece_less<Real>);
    }

    // Recompute the final sums in a fixed order with compensation: the
    // incremental totals steer refinement, the compensated pass is returned.
    std::vector<piece<Real>> all = heap;
    all.insert(all.end(), frozen.begin(), frozen.end());
    quad_result_t<Real> out;
    out.value = neumaier_total<Real>(all, &piece<Real>::val);
    out.abs_error_estimate = neumaier_total<Real>(all, &piece<Real>::err);
    out.evaluations = evals;
    return out;
}

template quad_result_t<double> integrate_adaptive<double>(
    const std::function<double(double)>&, double, double, double, double,
    std::int64_t, const std::vector<double>&);
template quad_result_t<__float128> integrate_adaptive<__float128>(
    const std::function<__float128(__float128)>&, double, double, __float128,
    __float128, std::int64_t, const std::vector<double>&);

}  // namespace detail

QuadResult integrate(const std::function<double(double)>& g, Interval iv,
                     double rel_tol, double abs_tol, std::int64_t max_evals,
                     const std::vector<double>& breakpoints) {
    const auto r = detail::integrate_adaptive<double>(g, iv.lower, iv.upper,
                                                      rel_tol, abs_tol,
                                                      max_evals, breakpoints);
    return {r.value, r.abs_error_estimate, r.evaluations};
}

QuadResult integrate_gaussian_centered(const std::function<double(double)>& h,
                                       double center, Interval iv,
                                       double rel_tol) {
    const double abs_tol = kQuadAbsTol;
    // Truncation window: the Gaussian factor's mass outside center +- W is
    // below abs_tol for W = sqrt(-2 ln(abs_tol)) + 3 (and at least 10).
    const double w = std::max(10.0, std::sqrt(-2.0 * std::log(abs_tol)) + 3.0);
    const double lo = std::max(iv.lower, center - w);
    const double hi = std::min(iv.upper, center + w);
    if (!(lo < hi)) return {0.0, 0.0, 1};

    auto g = [&h, center](double x) {
        const double u = x - center;
        return h(x) * std::exp(-0.5 * u * u);
    };
    std::vector<double> bp;
    for (double off : {-3.0, -1.0, 0.0, 1.0, 3.0}) bp.push_back(center + off);
    const auto r = detail::integrate_adaptive<double>(g, lo, hi, rel_tol,
                                                      abs_tol, kQuadMaxEvals, bp);
    return {r.value, r.abs_error_estimate, r.evaluations};
}

}  // namespace polysep

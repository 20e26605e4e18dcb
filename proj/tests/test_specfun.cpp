#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <quadmath.h>
#include <stdexcept>

#include "polysep/quadrature.hpp"
#include "polysep/specfun.hpp"

using namespace polysep;

namespace {
bool rel_close(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::fabs(b);
}
}  // namespace

// Reference digits below were computed independently with 50-digit arithmetic.

TEST_CASE("gaussian tail oracle values") {
    CHECK(q(0.0) == 0.5);
    CHECK(rel_close(q(3.0), 0.00134989803163009452665181476759, 1e-14));
    CHECK(rel_close(q(1.0 / std::sqrt(2.0)), 0.239750061093476731158626673054, 1e-14));
    CHECK(rel_close(q(-1.5), 0.93319279873114193399550595902, 1e-14));
    CHECK(rel_close(gauss_pdf(1.0), 0.241970724519143349797830192936, 1e-14));
    CHECK(rel_close(gauss_pdf(0.0), 0.398942280401432677939946059934, 1e-14));
}

TEST_CASE("reflection and monotonicity") {
    for (double x : {0.1, 0.7, 1.3, 2.9, 5.5}) {
        CHECK(rel_close(q(x) + q(-x), 1.0, 1e-15));
    }
    // below -8 the value saturates to 1.0 in double, so start where strict
    // decrease is resolvable
    double prev = q(-8.0);
    for (double x = -7.5; x <= 10.0; x += 0.5) {
        const double cur = q(x);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("log tail matches direct log below and above the seam") {
    // stop at 37: q(38) is already denormal, so log(q(x)) itself loses digits
    for (double x : {-2.0, 0.0, 1.0, 3.0, 5.0, 7.9, 8.0, 8.5, 9.0, 12.0, 20.0,
                     25.5, 30.0, 37.0}) {
        CHECK(rel_close(log_q(x), std::log(q(x)), 1e-13));
    }
}

TEST_CASE("log tail oracle values far beyond double underflow") {
    CHECK(rel_close(log_q(8.0), -35.0134371599145498955041281525, 1e-13));
    CHECK(rel_close(log_q(8.5), -39.197396428217669288507983651, 1e-13));
    CHECK(rel_close(log_q(40.0), -804.608442013753788166606832919, 1e-13));
    CHECK(rel_close(log_q(200.0), -20006.2172808981904020931021903, 1e-13));
    CHECK(rel_close(log_q(1000.0), -500007.826694812184309806167549, 1e-13));
}

TEST_CASE("probit inverts the normal CDF") {
    CHECK(probit(0.5) == 0.0);
    CHECK(rel_close(probit(0.975), 1.959963984540054235524594, 1e-14));
    CHECK(probit(0.25) == -probit(0.75));  // 1 - 0.75 is exact in binary
    for (double p : {1e-300, 1e-10, 0.01, 0.3, 0.5, 0.7, 0.999, 1.0 - 1e-12}) {
        // Phi(probit(p)) = p, i.e. Q(probit(p)) = 1 - p; check in whichever
        // tail is representable.
        const double y = probit(p);
        if (p <= 0.5)
            CHECK(rel_close(q(-y), p, 1e-10));
        else
            CHECK(rel_close(1.0 - q(y), p, 1e-10));
    }
    CHECK_THROWS_AS(probit(0.0), std::invalid_argument);
    CHECK_THROWS_AS(probit(1.0), std::invalid_argument);
    CHECK_THROWS_AS(probit(-0.1), std::invalid_argument);
}

TEST_CASE("quad precision tail") {
    const __float128 ref3 = strtoflt128("1.34989803163009452665181476759e-3", nullptr);
    CHECK(double(fabsq(detail::q128(3.0Q) / ref3 - 1.0Q)) < 1e-28);
    CHECK(double(fabsq(detail::q128(0.0Q) - 0.5Q)) < 1e-33);
    // ln of the quad-precision tail agrees with the double log-domain value.
    const __float128 l85 = logq(detail::q128(8.5Q));
    const __float128 ref85 = strtoflt128("-39.197396428217669288507983651", nullptr);
    CHECK(double(fabsq(l85 - ref85)) < 1e-25);
    // deep tail, far past double underflow
    const __float128 l40 = logq(detail::q128(40.0Q));
    const __float128 ref40 = strtoflt128("-804.608442013753788166606832919", nullptr);
    CHECK(double(fabsq(l40 - ref40)) < 1e-24);
    CHECK(double(detail::gauss_kernel128(0.0Q)) == 1.0);
    CHECK(rel_close(double(detail::gauss_kernel128(2.0Q)), std::exp(-2.0), 1e-15));
}

TEST_CASE("expectation identity 2*E[Q(T); T>x] = Q(x)^2") {
    // For T ~ N(0,1): integral_x^inf pdf(t) Q(t) dt = Q(x)^2 / 2.
    const double inf = std::numeric_limits<double>::infinity();
    for (double x : {-3.0, -1.5, 0.0, 1.0, 3.0}) {
        const auto r = integrate([](double t) { return gauss_pdf(t) * q(t); },
                                 Interval{x, inf}, 1e-12, 0.0);
        CHECK(rel_close(2.0 * r.value, q(x) * q(x), 1e-10));
    }
}

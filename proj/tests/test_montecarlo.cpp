#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "polysep/geometry.hpp"
#include "polysep/montecarlo.hpp"
#include "polysep/snr.hpp"
#include "polysep/specfun.hpp"

using namespace polysep;
using detail::gauss_pair;
using detail::philox4x32;
using detail::uniform_index;

namespace {
using Block = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;
}  // namespace

TEST_CASE("counter generator known-answer vectors") {
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) ==
          Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                     {0xffffffffu, 0xffffffffu}) ==
          Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32({1, 2, 3, 4}, {5, 6}) ==
          Block{0xc0c839bcu, 0x889c87c5u, 0x61986739u, 0x2d4623d0u});
    CHECK(philox4x32({7, 0, 0, 0}, {42, 0}) ==
          Block{0x5bbd83b1u, 0x68784c85u, 0x172067aau, 0x2e6b75b7u});
    CHECK(philox4x32({0xdeadbeefu, 0x12345678u, 9, 1}, {0xcafef00du, 1}) ==
          Block{0x286d042cu, 0xa00d90e5u, 0xfb6ca6ccu, 0x243a1d1du});
}

TEST_CASE("gaussian draw known-answer values") {
    const auto g1 = gauss_pair(7, 0, 0, 42);
    CHECK(std::fabs(g1.first - 1.2079763596247317) < 1e-12);
    CHECK(std::fabs(g1.second - 0.7702108069761534) < 1e-12);
    const auto g2 = gauss_pair(0, 0, 0, 0);
    CHECK(std::fabs(g2.first - -0.12151797595308224) < 1e-12);
    CHECK(std::fabs(g2.second - -1.350032659857655) < 1e-12);
    const auto g3 = gauss_pair(123456789012345ull, 3, 1, 0xDEADBEEFCAFEF00Dull);
    CHECK(std::fabs(g3.first - -0.6587527528187362) < 1e-12);
    CHECK(std::fabs(g3.second - 1.8625594961671863) < 1e-12);
}

TEST_CASE("uniform index draw") {
    CHECK(uniform_index(5, 24, 42) == 5u);
    CHECK(uniform_index(0, 8, 12345) == 1u);
    for (std::uint64_t t = 0; t < 1000; ++t) CHECK(uniform_index(t, 24, 1) < 24u);
}

TEST_CASE("simulation is deterministic and worker-count invariant") {
    const Constellation c = generate(Kind::crosspolytope, 3);
    const SnrPoint snr = SnrPoint::from_linear(3.0);
    const auto a = simulate_sep(c, snr, 200000, 99, 1);
    const auto b = simulate_sep(c, snr, 200000, 99, 1);
    const auto three = simulate_sep(c, snr, 200000, 99, 3);
    CHECK(a.errors == b.errors);
    CHECK(a.errors == three.errors);
    CHECK(a.trials == 200000);
    CHECK(a.seed == 99);
    CHECK(a.p_hat == double(a.errors) / 200000.0);
    const double hw = 1.959963984540054 *
                      std::sqrt(a.p_hat * (1.0 - a.p_hat) / 200000.0);
    CHECK(std::fabs(a.ci95_halfwidth - hw) < 1e-12 * hw + 1e-18);

    // uneven chunking: not a multiple of the chunk size, fewer than one chunk
    const auto odd1 = simulate_sep(c, snr, kMcChunk + 1, 7, 2);
    const auto odd2 = simulate_sep(c, snr, kMcChunk + 1, 7, 5);
    CHECK(odd1.errors == odd2.errors);
    CHECK(odd1.trials == kMcChunk + 1);
    CHECK(simulate_sep(c, snr, 100, 7, 4).trials == 100);

    // different seeds explore different noise
    CHECK(gauss_pair(0, 0, 0, 1) != gauss_pair(0, 0, 0, 2));
    const auto s1 = simulate_sep(c, snr, 100000, 1);
    const auto s2 = simulate_sep(c, snr, 100000, 2);
    CHECK(s1.errors != s2.errors);
}

TEST_CASE("estimate matches the closed form for antipodal signaling") {
    const Constellation c = generate(Kind::cube, 1);
    const SnrPoint snr = SnrPoint::from_linear(1.0);
    const auto est = simulate_sep(c, snr, 1000000, 20260819);
    const double truth = q(std::sqrt(2.0));
    const double sigma = std::sqrt(truth * (1.0 - truth) / 1e6);
    CHECK(std::fabs(est.p_hat - truth) < 3.5 * sigma);
}

TEST_CASE("noise-free and guessing limits") {
    const Constellation c2 = generate(Kind::cube, 2);
    CHECK(simulate_sep(c2, SnrPoint::from_linear(1e8), 100000, 5).errors == 0);

    const Constellation c24 = generate(Kind::cell24);
    const auto blind = simulate_sep(c24, SnrPoint::from_linear(1e-12), 100000, 5);
    const double truth = 23.0 / 24.0;
    const double sigma = std::sqrt(truth * (1.0 - truth) / 1e5);
    CHECK(std::fabs(blind.p_hat - truth) < 3.5 * sigma);
}

TEST_CASE("region predicate run reproduces the ML run exactly") {
    const SnrPoint snr = SnrPoint::from_gamma_b_db(4.0, std::log2(24.0));
    const Constellation c24 = generate(Kind::cell24, 0, Orientation::rotated);
    const auto ml = simulate_sep(c24, snr, 100000, 777);
    const auto region = simulate_24cell_region(snr, 100000, 777);
    CHECK(ml.errors == region.errors);
    const auto region3 = simulate_24cell_region(snr, 100000, 777, 3);
    CHECK(region3.errors == region.errors);
}

TEST_CASE("uniform symbol draws agree with the fixed-symbol run") {
    const Constellation c = generate(Kind::crosspolytope, 3);
    const SnrPoint snr = SnrPoint::from_gamma_b_db(4.0, std::log2(6.0));
    const auto fixed = simulate_sep(c, snr, 200000, 11, 1, false);
    const auto uniform = simulate_sep(c, snr, 200000, 12, 1, true);
    const double pf = fixed.p_hat, pu = uniform.p_hat;
    const double joint =
        std::sqrt(pf * (1 - pf) / 200000.0 + pu * (1 - pu) / 200000.0);
    CHECK(std::fabs(pf - pu) < 3.5 * joint);
}

TEST_CASE("score interval") {
    const double z2 = 3.841458820694124;  // z^2 at the 95% level
    const auto zero = confidence_interval(0, 100, 0.95);
    CHECK(zero.first == 0.0);
    CHECK(std::fabs(zero.second - z2 / (100.0 + z2)) < 1e-12);

    const auto full = confidence_interval(50, 50, 0.95);
    CHECK(full.second == 1.0);
    CHECK(std::fabs(full.first - 50.0 / (50.0 + z2)) < 1e-12);

    const auto mid = confidence_interval(500, 10000, 0.95);
    const double n = 10000.0, ph = 0.05;
    const double denom = 1.0 + z2 / n;
    const double center = (ph + z2 / (2 * n)) / denom;
    const double hw = std::sqrt(z2) * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / denom;
    CHECK(std::fabs(mid.first - (center - hw)) < 1e-12);
    CHECK(std::fabs(mid.second - (center + hw)) < 1e-12);
    CHECK(mid.first < ph);
    CHECK(ph < mid.second);

    const auto wide = confidence_interval(500, 10000, 0.99);
    CHECK(wide.first < mid.first);
    CHECK(wide.second > mid.second);

    CHECK_THROWS_AS(confidence_interval(0, 0, 0.95), std::invalid_argument);
    CHECK_THROWS_AS(confidence_interval(5, 4, 0.95), std::invalid_argument);
    CHECK_THROWS_AS(confidence_interval(1, 10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(confidence_interval(1, 10, 1.0), std::invalid_argument);
}

TEST_CASE("simulation input validation") {
    const Constellation c = generate(Kind::cube, 2);
    CHECK_THROWS_AS(simulate_sep(c, SnrPoint::from_linear(0.0), 100, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_sep(c, SnrPoint::from_linear(1.0), 0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_24cell_region(SnrPoint::from_linear(0.0), 100, 1),
                    std::invalid_argument);
}

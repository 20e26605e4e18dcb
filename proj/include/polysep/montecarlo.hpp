#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "polysep/geometry.hpp"
#include "polysep/snr.hpp"

namespace polysep {

struct McEstimate {
    std::uint64_t trials;
    std::uint64_t errors;
    double p_hat;
    double ci95_halfwidth;  // Wald half-width 1.96*sqrt(p(1-p)/trials)
    std::uint64_t seed;
};

// Trials are partitioned into fixed chunks; chunk c is processed by worker
// c % workers and every trial's noise is a pure function of (seed, trial
// index), so the result is identical for any worker count.
inline constexpr std::uint64_t kMcChunk = 65536;

// AWGN ML-detection simulation at unit symbol energy: per-dimension noise
// sigma = sqrt(1/(2*gamma)). Transmits index 0 by default (vertex
// transitivity); uniform_symbol draws the index per trial from its own
// substream instead.
McEstimate simulate_sep(const Constellation& c, SnrPoint snr,
                        std::uint64_t trials, std::uint64_t seed,
                        int workers = 1, bool uniform_symbol = false);

// Transmits (1,1,0,0) in the unnormalized 24-cell frame and tests the error
// event directly with the Voronoi predicate; consumes the same noise stream
// as simulate_sep so paired runs produce identical error counts.
McEstimate simulate_24cell_region(SnrPoint snr, std::uint64_t trials,
                                  std::uint64_t seed, int workers = 1);

// Wilson score interval; at errors = 0 the lower bound is 0 and the upper
// bound stays strictly positive.
std::pair<double, double> confidence_interval(std::uint64_t errors,
                                              std::uint64_t trials,
                                              double level);

namespace detail {

// Philox4x32-10 counter-based generator: 128-bit counter, 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// Two standard Gaussians from counter (trial, block, stream) under `seed`,
// via Box-Muller on the 128 bits of one Philox block.
std::pair<double, double> gauss_pair(std::uint64_t trial, std::uint32_t block,
                                     std::uint32_t stream, std::uint64_t seed);

// Uniform integer in [0, m) from stream 1, used for uniform symbol draws.
std::uint32_t uniform_index(std::uint64_t trial, std::uint32_t m,
                            std::uint64_t seed);

}  // namespace detail

}  // namespace polysep

#include "polysep/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "polysep/specfun.hpp"

namespace polysep {

namespace detail {

namespace {
constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kBump0 = 0x9E3779B9u;
constexpr std::uint32_t kBump1 = 0xBB67AE85u;
}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
        const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
        ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
               std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
        key[0] += kBump0;
        key[1] += kBump1;
    }
    return ctr;
}

std::pair<double, double> gauss_pair(std::uint64_t trial, std::uint32_t block,
                                     std::uint32_t stream, std::uint64_t seed) {
    const auto r = philox4x32(
        {std::uint32_t(trial), std::uint32_t(trial >> 32), block, stream},
        {std::uint32_t(seed), std::uint32_t(seed >> 32)});
    const std::uint64_t v = (std::uint64_t(r[0]) << 32) | r[1];
    const std::uint64_t w = (std::uint64_t(r[2]) << 32) | r[3];
    // (v + 0.5)/2^64 lies strictly inside (0,1), so the log is always finite.
    const double u1 = (double(v) + 0.5) * 0x1p-64;
    const double u2 = double(w) * 0x1p-64;
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * M_PI * u2;
    return {rad * std::cos(ang), rad * std::sin(ang)};
}

std::uint32_t uniform_index(std::uint64_t trial, std::uint32_t m,
                            std::uint64_t seed) {
    const auto r = philox4x32(
        {std::uint32_t(trial), std::uint32_t(trial >> 32), 0u, 1u},
        {std::uint32_t(seed), std::uint32_t(seed >> 32)});
    return std::uint32_t((std::uint64_t(r[0]) * m) >> 32);
}

}  // namespace detail

namespace {

// Runs chunks c = worker, worker + stride, ... and returns the error count;
// per-trial work is a pure function of (seed, trial), so the partition is
// irrelevant to the result.
template <typename TrialFn>
std::uint64_t run_chunks(std::uint64_t trials, int worker, int stride,
                         const TrialFn& one_trial) {
    const std::uint64_t nchunks = (trials + kMcChunk - 1) / kMcChunk;
    std::uint64_t errors = 0;
    for (std::uint64_t c = std::uint64_t(worker); c < nchunks; c += std::uint64_t(stride)) {
        const std::uint64_t t0 = c * kMcChunk;
        const std::uint64_t t1 = std::min(trials, t0 + kMcChunk);
        for (std::uint64_t t = t0; t < t1; ++t) errors += one_trial(t) ? 1u : 0u;
    }
    return errors;
}

template <typename TrialFn>
McEstimate run_simulation(std::uint64_t trials, std::uint64_t seed, int workers,
                          const TrialFn& one_trial) {
    if (trials < 1) throw std::invalid_argument("simulate: trials >= 1 required");
    if (workers < 1) workers = 1;
    std::vector<std::uint64_t> partial(workers, 0);
    if (workers == 1) {
        partial[0] = run_chunks(trials, 0, 1, one_trial);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int w = 0; w < workers; ++w)
            threads.emplace_back([&, w] { partial[w] = run_chunks(trials, w, workers, one_trial); });
        for (auto& th : threads) th.join();
    }
    std::uint64_t errors = 0;
    for (std::uint64_t e : partial) errors += e;
    const double p = double(errors) / double(trials);
    const double z95 = probit(0.975);
    const double hw = z95 * std::sqrt(std::max(0.0, p * (1.0 - p) / double(trials)));
    return {trials, errors, p, hw, seed};
}

}  // namespace

McEstimate simulate_sep(const Constellation& c, SnrPoint snr,
                        std::uint64_t trials, std::uint64_t seed, int workers,
                        bool uniform_symbol) {
    if (!(snr.gamma > 0)) throw std::invalid_argument("simulate_sep: gamma > 0 required");
    const int n = c.n, m = c.m;
    std::vector<double> flat(std::size_t(m) * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) flat[std::size_t(i) * n + j] = c.points[i][j];
    const double sigma = std::sqrt(1.0 / (2.0 * snr.gamma));
    const int nblocks = (n + 1) / 2;

    auto one_trial = [&](std::uint64_t t) {
        std::uint32_t idx = 0;
        if (uniform_symbol) idx = detail::uniform_index(t, std::uint32_t(m), seed);
        const double* x0 = &flat[std::size_t(idx) * n];
        double y[16];
        for (int b = 0; b < nblocks; ++b) {
            const auto g = detail::gauss_pair(t, std::uint32_t(b), 0u, seed);
            y[2 * b] = x0[2 * b] + sigma * g.first;
            if (2 * b + 1 < n) y[2 * b + 1] = x0[2 * b + 1] + sigma * g.second;
        }
        int best = 0;
        double bestd = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            const double* p = &flat[std::size_t(i) * n];
            double d2 = 0;
            for (int j = 0; j < n; ++j) {
                const double diff = y[j] - p[j];
                d2 += diff * diff;
            }
            if (d2 < bestd) {
                bestd = d2;
                best = i;
            }
        }
        return best != int(idx);
    };

    if (n > 16) {
        // The fixed stack buffer covers every generatable kind (n <= 12).
        throw std::invalid_argument("simulate_sep: dimension > 16 not supported");
    }
    return run_simulation(trials, seed, workers, one_trial);
}

McEstimate simulate_24cell_region(SnrPoint snr, std::uint64_t trials,
                                  std::uint64_t seed, int workers) {
    if (!(snr.gamma > 0))
        throw std::invalid_argument("simulate_24cell_region: gamma > 0 required");
    // Transmit (1,1,0,0) in the unnormalized frame: y = x + Z/sqrt(gamma) is
    // sqrt(2) times the unit-energy receive vector, so the same noise block
    // stream reproduces simulate_sep's decisions exactly.
    const double s = 1.0 / std::sqrt(snr.gamma);
    auto one_trial = [&](std::uint64_t t) {
        const auto g01 = detail::gauss_pair(t, 0u, 0u, seed);
        const auto g23 = detail::gauss_pair(t, 1u, 0u, seed);
        const double y0 = 1.0 + s * g01.first;
        const double y1 = 1.0 + s * g01.second;
        const double y2 = s * g23.first;
        const double y3 = s * g23.second;
        return !(std::min(y0, y1) >= std::max(std::fabs(y2), std::fabs(y3)));
    };
    return run_simulation(trials, seed, workers, one_trial);
}

std::pair<double, double> confidence_interval(std::uint64_t errors,
                                              std::uint64_t trials,
                                              double level) {
    if (trials < 1) throw std::invalid_argument("confidence_interval: trials >= 1");
    if (errors > trials) throw std::invalid_argument("confidence_interval: errors > trials");
    if (!(level > 0.0) || !(level < 1.0))
        throw std::invalid_argument("confidence_interval: level in (0,1)");
    const double z = probit(0.5 + 0.5 * level);
    const double nn = double(trials);
    const double ph = double(errors) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (ph + z2 / (2.0 * nn)) / denom;
    const double hw = z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
    const double lo = errors == 0 ? 0.0 : std::max(0.0, center - hw);
    const double hi = errors == trials ? 1.0 : std::min(1.0, center + hw);
    return {lo, hi};
}

}  // namespace polysep

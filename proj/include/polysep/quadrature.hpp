#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "polysep/errors.hpp"

namespace polysep {

// Integration interval; either bound may be infinite.
struct Interval {
    double lower;
    double upper;
};

struct QuadResult {
    double value;
    double abs_error_estimate;
    std::int64_t evaluations;
};

inline constexpr double kQuadRelTol = 1e-11;
inline constexpr double kQuadAbsTol = 1e-15;
inline constexpr std::int64_t kQuadMaxEvals = 1000000;

// Adaptive Gauss-Kronrod (7,15) integration of g over iv. Infinite bounds are
// mapped to a finite parameter range before subdivision. `breakpoints` are
// abscissas (in the original variable) where initial subinterval boundaries are
// placed, e.g. at known peaks or boundary layers. Throws NonConvergence if the
// requested tolerance is not reached within max_evals integrand evaluations.
QuadResult integrate(const std::function<double(double)>& g, Interval iv,
                     double rel_tol = kQuadRelTol, double abs_tol = kQuadAbsTol,
                     std::int64_t max_evals = kQuadMaxEvals,
                     const std::vector<double>& breakpoints = {});

// Integrates h(x) * exp(-(x - center)^2 / 2) over iv, seeding subdivision
// around the kernel peak so narrow high-SNR kernels are never stepped over.
QuadResult integrate_gaussian_centered(const std::function<double(double)>& h,
                                       double center, Interval iv,
                                       double rel_tol = kQuadRelTol);

namespace detail {

template <typename Real>
struct quad_result_t {
    Real value;
    Real abs_error_estimate;
    std::int64_t evaluations;
};

// Core engine, instantiated for double and __float128. Bounds are given in the
// original variable (infinities allowed); breakpoints likewise.
template <typename Real>
quad_result_t<Real> integrate_adaptive(const std::function<Real(Real)>& g,
                                       double lower, double upper,
                                       Real rel_tol, Real abs_tol,
                                       std::int64_t max_evals,
                                       const std::vector<double>& breakpoints);

}  // namespace detail

}  // namespace polysep

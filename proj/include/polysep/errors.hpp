#pragma once

#include <stdexcept>
#include <string>

namespace polysep {

// Raised when the adaptive quadrature cannot reach the requested tolerance
// within its evaluation budget.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when vertex generation is requested for a kind that is parameters-only.
struct UnsupportedKind : std::runtime_error {
    explicit UnsupportedKind(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an exact SEP formula is requested for a constellation that has none.
struct NoExactFormula : std::runtime_error {
    explicit NoExactFormula(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by energy normalization when the input points do not share a common norm.
struct NotEquiEnergy : std::runtime_error {
    explicit NotEquiEnergy(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when the per-vertex nearest-neighbor counts are not identical.
struct NotVertexTransitive : std::runtime_error {
    explicit NotVertexTransitive(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace polysep

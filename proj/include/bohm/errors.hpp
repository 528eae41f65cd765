#pragma once

#include <stdexcept>
#include <string>

namespace bohm {

// Thrown when a phase or velocity is requested too close to a wavefunction
// node (psi = 0), where both are undefined.
struct NodeProximityError : std::runtime_error {
    explicit NodeProximityError(const std::string& what) : std::runtime_error(what) {}
};

// ODE integration failure: step-size underflow or tolerance cannot be met.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive quadrature did not converge within the recursion budget.
struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// Root bracket could not be established after the allowed expansions.
struct BracketError : std::runtime_error {
    explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

// Wave packet reached the edge of the periodic grid.
struct BoundaryMassError : std::runtime_error {
    explicit BoundaryMassError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or invalid run configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bohm

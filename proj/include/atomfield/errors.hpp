#pragma once

#include <stdexcept>
#include <string>

namespace atomfield {

// Bad scenario/solver configuration (wrong grid, step size, schema violation).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation point collides with a pole or a contour hits the convergence boundary.
struct SingularityError : std::runtime_error {
    explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds a hard complexity guard (symbolic order, tableau blocks).
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Fixed-point loop did not converge; carries the last iterate.
struct IterationError : std::runtime_error {
    IterationError(const std::string& what, double last)
        : std::runtime_error(what), last_iterate(last) {}
    double last_iterate;
};

// Adaptive ODE step-size underflow.
struct StiffnessError : std::runtime_error {
    explicit StiffnessError(const std::string& what) : std::runtime_error(what) {}
};

// A symbolic identity or numeric cross-check failed.
struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

// Operator word outside what an operation supports (e.g. mixed A and a factors).
struct UnsupportedWordError : std::runtime_error {
    explicit UnsupportedWordError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace atomfield

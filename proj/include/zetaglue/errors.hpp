#pragma once

#include <stdexcept>
#include <string>

namespace zetaglue {

// Thrown when a zeta-determinant is requested for a non-invertible operator
// without an admissible kernel treatment.
struct KernelError : std::runtime_error {
    explicit KernelError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a spectral map is used in a regularized determinant without a
// declared asymptotic order/constant.
struct MissingAsymptoticsError : std::runtime_error {
    explicit MissingAsymptoticsError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by least-squares fits whose (column-normalized) design matrix is
// numerically singular.
struct ConditioningError : std::runtime_error {
    ConditioningError(const std::string& what, double cond)
        : std::runtime_error(what), condition_number(cond) {}
    double condition_number;
};

// Thrown when an experiment's spectral hypothesis fails (e.g. a kernel is
// present where invertibility is required).
struct HypothesisError : std::runtime_error {
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// Configuration / input validation failure.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zetaglue

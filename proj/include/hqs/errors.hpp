#pragma once

#include <stdexcept>
#include <string>

namespace hqs {

// User / parameter errors (CLI exit code 2).
struct InvalidParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidDimensionError : InvalidParameterError {
    using InvalidParameterError::InvalidParameterError;
};

// Numerical errors (CLI exit code 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegrationError : NumericalError {
    IntegrationError(const std::string& what, double time_s)
        : NumericalError(what + " (at t = " + std::to_string(time_s) + " s)"), time(time_s) {}
    double time;
};

struct ConvergenceError : NumericalError {
    using NumericalError::NumericalError;
};

struct ConsistencyError : NumericalError {
    using NumericalError::NumericalError;
};

struct DegenerateContrastError : NumericalError {
    using NumericalError::NumericalError;
};

struct InversionError : NumericalError {
    using NumericalError::NumericalError;
};

// Measured population below the simulated protocol floor; carries the floor.
struct FloorDominatedError : NumericalError {
    FloorDominatedError(const std::string& what, double floor_value)
        : NumericalError(what + " (simulated floor = " + std::to_string(floor_value) + ")"),
          floor(floor_value) {}
    double floor;
};

struct FitError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace hqs

#pragma once

#include <stdexcept>
#include <string>

namespace gbbm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a map (e.g. r(xi) for |xi| <= 1).
struct DomainError : Error {
    using Error::Error;
};

// Bad configuration or input shape. Reported by the CLI with exit status 1.
struct ValidationError : Error {
    using Error::Error;
};

// The remaining errors are numerical failures (CLI exit status 2).
struct NumericalError : Error {
    using Error::Error;
};

struct ConvergenceError : NumericalError {
    using NumericalError::NumericalError;
};

struct ResolutionError : NumericalError {
    using NumericalError::NumericalError;
};

struct BlowUpError : NumericalError {
    using NumericalError::NumericalError;
};

struct DegenerateFitError : NumericalError {
    using NumericalError::NumericalError;
};

struct InsufficientDataError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace gbbm

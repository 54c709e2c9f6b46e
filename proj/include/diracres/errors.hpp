#pragma once
//! Exception types raised by the library. The CLI maps them to exit codes.

#include <stdexcept>
#include <string>

namespace diracres {

//! Base for all numerical failures (exit code 3 in the CLI).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! Caller passed an argument outside the documented domain.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularArgumentError : NumericalError {
  using NumericalError::NumericalError;
};

struct BranchPointError : NumericalError {
  using NumericalError::NumericalError;
};

struct AmbiguousRimError : NumericalError {
  using NumericalError::NumericalError;
};

//! 2|Im k|gamma exceeded the configured ceiling (exit code 4 in the CLI).
struct ValidityCeilingError : NumericalError {
  using NumericalError::NumericalError;
};

//! Two independent routes for the same quantity disagree.
struct InconsistencyError : NumericalError {
  using NumericalError::NumericalError;
};

struct InitializationAccuracyError : NumericalError {
  using NumericalError::NumericalError;
};

//! Evaluation at a zero of the Jost function where a quotient is required.
struct PoleError : NumericalError {
  using NumericalError::NumericalError;
};

//! Phase continuation or winding accounting failed.
struct ContourError : NumericalError {
  using NumericalError::NumericalError;
};

struct ClassificationError : NumericalError {
  using NumericalError::NumericalError;
};

//! Malformed configuration or potential file (exit code 2 in the CLI).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace diracres

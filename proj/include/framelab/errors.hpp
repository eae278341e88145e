#pragma once

#include <stdexcept>

namespace framelab {

// Invalid construction parameters or malformed configuration.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Integration step outside the stability guard.
struct StepSizeError : std::domain_error {
  using std::domain_error::domain_error;
};

// A front fit was requested on a run with too little signal.
struct InsufficientSignalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Least-squares system is rank deficient (e.g. collinear events).
struct DegenerateFitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A canned experiment's built-in check did not hold.
struct ExperimentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace framelab

#pragma once

#include <stdexcept>
#include <string>

namespace mmusic {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caller passed an argument that violates a documented precondition.
struct InvalidInputError : Error {
  using Error::Error;
};

/// No valid samples at all (Q(0) = 0); nothing can be estimated.
struct NoDataError : Error {
  using Error::Error;
};

/// Data exist but do not support the requested construction
/// (e.g. a required ACF lag has no valid sample pairs).
struct InsufficientDataError : Error {
  using Error::Error;
};

/// Fewer observations than unknowns in a least-squares system.
struct UnderdeterminedError : Error {
  using Error::Error;
};

/// A linear system is too ill-conditioned to solve reliably.
struct ConditioningError : Error {
  using Error::Error;
};

/// Numerical routine failed to converge or produced unusable output.
struct NumericError : Error {
  using Error::Error;
};

/// Order selection found no signal subspace (K_hat = 0).
struct NoSignalError : Error {
  using Error::Error;
};

/// Scenario / configuration file is malformed or inconsistent.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace mmusic

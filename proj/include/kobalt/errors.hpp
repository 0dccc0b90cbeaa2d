#pragma once

#include <stdexcept>
#include <string>

namespace kobalt {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (shape mismatch, non-finite data, ...).
struct InvalidInput : Error {
  using Error::Error;
};

/// A point is too close to the boundary of its domain to be trusted
/// numerically.  Nothing is clamped; the caller must back off.
struct BoundaryProximity : Error {
  using Error::Error;
};

/// A factorization or normalization step lost rank.
struct NumericalDegeneracy : Error {
  using Error::Error;
};

/// An iterative limit did not settle within its budget.
struct ConvergenceFailure : Error {
  using Error::Error;
};

/// Too few samples to run the requested estimate.
struct InsufficientData : Error {
  using Error::Error;
};

/// A root bracket never produced a sign change.
struct NoIntersection : Error {
  using Error::Error;
};

}  // namespace kobalt

#pragma once

#include <stdexcept>
#include <string>

namespace s2kit {

/// Base of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed argument: wrong dimension, index out of range, non-finite entry.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on otherwise well-formed input does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a scalar transform (e.g. u >= 0 for -sqrt(-t)).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A transform with vanishing derivative where a strictly monotone one is required.
class SingularTransformError : public Error {
 public:
  using Error::Error;
};

/// Grid or solver configuration that cannot be honoured (grid too coarse, bad tolerance).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Source term evaluated to a non-positive value where positivity is required.
class SourceError : public Error {
 public:
  using Error::Error;
};

/// Iterative solve failed (non-convergence, stagnation, loss of admissibility).
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Hypothesis of a principle or bound is not met (non-convex transform, p >= 2, ...).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or other numerical kernel failed to reach its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace s2kit

#pragma once

#include <stdexcept>
#include <string>

namespace godron {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke an operation's precondition (mismatched orders, wrong frame, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Input is geometrically degenerate (singular linear part, rank-deficient Jacobian, ...).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Parameters violate a genericity or validity condition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The point has the wrong type for the requested operation (e.g. elliptic instead of hyperbolic).
class ClassificationError : public Error {
 public:
  using Error::Error;
};

/// Q is degenerate, so the canonical splitting of cubic forms does not exist.
class ParabolicPointError : public ClassificationError {
 public:
  using ClassificationError::ClassificationError;
};

/// A sign-defining quantity is within tolerance of zero.
class NonGenericError : public Error {
 public:
  using Error::Error;
};

/// Numerical resolution was insufficient (loop too coarse, unresolved curve, ...).
class ResolutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace godron

#pragma once

#include <stdexcept>
#include <string>

namespace qseries {

// Base of every error raised by the engine. The CLI maps subclasses onto
// exit codes, so each failure mode gets its own type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exponent is not representable on the grid (1/D)Z, or a square root of a
// monomial does not exist on the grid.
class GridError : public Error {
 public:
  using Error::Error;
};

// Division by a series (or factor) whose leading coefficient vanishes.
class NotAUnitError : public Error {
 public:
  using Error::Error;
};

// A requested comparison order exceeds what the operands actually know.
class InsufficientPrecisionError : public Error {
 public:
  using Error::Error;
};

// Term valuations failed to escape past the truncation order within the cap.
class NonConvergentError : public Error {
 public:
  using Error::Error;
};

// A theta-type series whose quadratic exponent does not grow (r <= 0).
class DivergentError : public Error {
 public:
  using Error::Error;
};

// A denominator factor of the Chu K-factor vanishes at the specialization.
class SingularKError : public Error {
 public:
  using Error::Error;
};

// A parameter assignment is missing, malformed, or outside its domain.
class InvalidSpecializationError : public Error {
 public:
  using Error::Error;
};

// Lookup of an identity or Bailey pair id that is not registered.
class UnknownIdError : public Error {
 public:
  using Error::Error;
};

// Mismatched rings (cyclotomic order or grid) in a binary operation.
class RingMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace qseries

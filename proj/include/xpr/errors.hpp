#pragma once

#include <stdexcept>
#include <string>

namespace xpr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Argument reduction or a certified computation would need more guard
/// precision than the configured ceiling allows.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// An input value lies outside the mathematical domain of the operation
/// (arcsin outside [-1,1], b outside [-1,1], M <= eps, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Repeated grid offsets or other inputs that make a check vacuous.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A grid is too short for the requested operation.
class LengthError : public Error {
 public:
  using Error::Error;
};

/// A sample magnitude is too small to take logarithms of.
class ZeroSample : public Error {
 public:
  using Error::Error;
};

/// A rational expression's denominator vanished at an evaluation point.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Roots too close together for stable coefficient recovery.
class RankError : public Error {
 public:
  using Error::Error;
};

/// A linear solve was abandoned because of excessive condition number.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

/// Requested work exceeds a configured budget (e.g. van der Waerden sizes
/// outside the stored table).
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Malformed CLI arguments or files.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace xpr

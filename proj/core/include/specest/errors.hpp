#pragma once

#include <stdexcept>
#include <string>

namespace specest {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (bad lag, size
/// mismatch, aliasing grid, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// External data failed validation (symmetry, completeness, parse errors).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// A dual variable is outside the feasible set on the grid.
class FeasibilityError : public Error {
 public:
  FeasibilityError(const std::string& what, double min_value)
      : Error(what), min_value_(min_value) {}

  /// Smallest value of Psi^{-1} + Q over the grid nodes.
  double min_value() const noexcept { return min_value_; }

 private:
  double min_value_;
};

/// Factorization failure: a matrix expected to be Hermitian positive
/// definite is singular or indefinite.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace specest

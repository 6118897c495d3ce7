#pragma once

#include <stdexcept>
#include <string>

namespace cohpure {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value failed one of the structural invariants of a matrix or state.
/// `magnitude` carries the size of the violation (e.g. trace deficit,
/// most negative eigenvalue) so callers can report it.
class ValidationError : public Error {
 public:
  enum class Kind {
    kNotSquare,
    kNonFinite,
    kHermiticity,
    kTrace,
    kPositivity,
    kDimension,
    kArgument,
  };

  ValidationError(Kind kind, double magnitude, const std::string& what)
      : Error(what), kind_(kind), magnitude_(magnitude) {}

  Kind kind() const { return kind_; }
  double magnitude() const { return magnitude_; }

 private:
  Kind kind_;
  double magnitude_;
};

const char* to_string(ValidationError::Kind kind);

/// Argument outside the mathematical domain of an operation
/// (negative eigenvalue under a square root, alpha out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(double residual, const std::string& what)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace cohpure

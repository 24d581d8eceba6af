#pragma once

#include <stdexcept>
#include <string>

namespace isorkhs {

/// Base of every error raised by the library. `kind()` is the stable tag the
/// CLI puts into its error documents.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

/// Argument outside the mathematical domain (angle outside Δ, not a polygon, ...).
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// Malformed or inconsistent input (duplicate nodes, bad JSON record, ...).
class InputError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "input"; }
};

/// A function returned a non-finite value at a sample point.
class EvaluationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "evaluation"; }
};

/// Adaptive quadrature ran out of depth. Carries the best estimate it had.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error_bound)
      : Error(what), estimate_(estimate), error_bound_(error_bound) {}
  const char* kind() const noexcept override { return "convergence"; }
  double estimate() const noexcept { return estimate_; }
  double errorBound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

class SingularSystemError : public Error {
 public:
  explicit SingularSystemError(const std::string& what, bool least_squares_attempted = false)
      : Error(what), least_squares_attempted_(least_squares_attempted) {}
  const char* kind() const noexcept override { return "singular"; }
  bool leastSquaresAttempted() const noexcept { return least_squares_attempted_; }

 private:
  bool least_squares_attempted_;
};

/// A mathematical invariant failed numerically (negative squared norm, ...).
/// Signals a representation or quadrature bug rather than bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invariant"; }
};

}  // namespace isorkhs

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lcs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Manifold or form dimensions do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A function was evaluated outside its domain (log or power of a nonpositive
/// argument, nonpositive conformal factor, ...). Carries the offending point
/// when it is known.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what, std::vector<double> point = {})
      : Error(what), point_(std::move(point)) {}
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

/// A sampled validation failed (closedness of a Lee form, Legendrian
/// condition, quadratic-at-infinity, ...).
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<double> point, double residual)
      : Error(what), point_(std::move(point)), residual_(residual) {}
  const std::vector<double>& point() const { return point_; }
  double residual() const { return residual_; }

 private:
  std::vector<double> point_;
  double residual_;
};

/// An operation's precondition fails; `worst_value` is the quantity that
/// broke it at `point`.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, std::vector<double> point, double worst_value)
      : Error(what), point_(std::move(point)), worst_value_(worst_value) {}
  const std::vector<double>& point() const { return point_; }
  double worst_value() const { return worst_value_; }

 private:
  std::vector<double> point_;
  double worst_value_;
};

/// A numerical procedure gave up (Newton stall, step-size collapse).
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace lcs

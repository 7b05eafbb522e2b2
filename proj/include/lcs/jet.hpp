#pragma once

#include <Eigen/Dense>

namespace lcs {

/// Largest chart dimension the library handles. Coordinate vectors and jet
/// derivatives live in fixed-capacity storage of this size, so no evaluation
/// allocates.
inline constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// Value, gradient and Hessian of a scalar quantity with respect to the chart
/// coordinates of the point where it was evaluated.
///
/// Arithmetic propagates the chain rule exactly up to second order. Functions
/// of a single argument go through `apply`, which takes the function's value
/// and first two derivatives at the current value.
struct Jet2 {
  double value = 0.0;
  Vec grad;
  Mat hess;

  Jet2() = default;
  Jet2(double v, Vec g, Mat h) : value(v), grad(std::move(g)), hess(std::move(h)) {}

  static Jet2 constant(double c, int dim);
  /// The coordinate function x_index, evaluated at x.
  static Jet2 variable(double x, int index, int dim);

  int dim() const { return static_cast<int>(grad.size()); }

  /// Composition with a scalar function whose derivatives at `value` are
  /// (f0, f1, f2).
  Jet2 apply(double f0, double f1, double f2) const;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(const Jet2& o);
  Jet2& operator*=(double s);
};

Jet2 operator+(Jet2 a, const Jet2& b);
Jet2 operator-(Jet2 a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);

Jet2 operator+(Jet2 a, double s);
Jet2 operator+(double s, Jet2 a);
Jet2 operator-(Jet2 a, double s);
Jet2 operator-(double s, const Jet2& a);
Jet2 operator*(Jet2 a, double s);
Jet2 operator*(double s, Jet2 a);
Jet2 operator/(const Jet2& a, double s);
Jet2 operator/(double s, const Jet2& a);

Jet2 reciprocal(const Jet2& a);
Jet2 exp(const Jet2& a);
/// Throws DomainError for a nonpositive argument.
Jet2 log(const Jet2& a);
Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 sqrt(const Jet2& a);
Jet2 atan(const Jet2& a);
/// Real power. Integer exponents accept any base except 0 with a negative
/// exponent; other exponents need a positive base.
Jet2 pow(const Jet2& a, double r);
/// a^b = exp(b log a); needs a > 0.
Jet2 pow(const Jet2& a, const Jet2& b);

/// Quintic smoothstep 6s^5 - 15s^4 + 10s^3 of the clamped argument; C^2 and
/// flat outside [0, 1].
Jet2 smootherstep(const Jet2& s);

}  // namespace lcs

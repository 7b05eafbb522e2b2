#include "lcs/jet.hpp"

#include <cmath>
#include <string>

#include "lcs/error.hpp"

namespace lcs {

Jet2 Jet2::constant(double c, int dim) {
  return Jet2(c, Vec::Zero(dim), Mat::Zero(dim, dim));
}

Jet2 Jet2::variable(double x, int index, int dim) {
  Jet2 j = constant(x, dim);
  j.grad(index) = 1.0;
  return j;
}

Jet2 Jet2::apply(double f0, double f1, double f2) const {
  Jet2 r;
  r.value = f0;
  r.grad = f1 * grad;
  r.hess = f1 * hess + f2 * (grad * grad.transpose());
  return r;
}

Jet2& Jet2::operator+=(const Jet2& o) {
  value += o.value;
  grad += o.grad;
  hess += o.hess;
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  value -= o.value;
  grad -= o.grad;
  hess -= o.hess;
  return *this;
}

Jet2& Jet2::operator*=(const Jet2& o) {
  Mat cross = grad * o.grad.transpose();
  hess = o.value * hess + value * o.hess + cross + cross.transpose();
  grad = o.value * grad + value * o.grad;
  value *= o.value;
  return *this;
}

Jet2& Jet2::operator*=(double s) {
  value *= s;
  grad *= s;
  hess *= s;
  return *this;
}

Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  r *= b;
  return r;
}
Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }
Jet2 operator-(const Jet2& a) { return Jet2(-a.value, -a.grad, -a.hess); }

Jet2 operator+(Jet2 a, double s) {
  a.value += s;
  return a;
}
Jet2 operator+(double s, Jet2 a) { return std::move(a) + s; }
Jet2 operator-(Jet2 a, double s) {
  a.value -= s;
  return a;
}
Jet2 operator-(double s, const Jet2& a) { return (-a) + s; }
Jet2 operator*(Jet2 a, double s) { return a *= s; }
Jet2 operator*(double s, Jet2 a) { return a *= s; }
Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }
Jet2 operator/(double s, const Jet2& a) { return reciprocal(a) * s; }

Jet2 reciprocal(const Jet2& a) {
  if (a.value == 0.0) throw DomainError("division by zero in jet arithmetic");
  const double inv = 1.0 / a.value;
  return a.apply(inv, -inv * inv, 2.0 * inv * inv * inv);
}

Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.value);
  return a.apply(e, e, e);
}

Jet2 log(const Jet2& a) {
  if (!(a.value > 0.0)) {
    throw DomainError("log of nonpositive value " + std::to_string(a.value));
  }
  const double inv = 1.0 / a.value;
  return a.apply(std::log(a.value), inv, -inv * inv);
}

Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return a.apply(s, c, -s);
}

Jet2 cos(const Jet2& a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return a.apply(c, -s, -c);
}

Jet2 sqrt(const Jet2& a) {
  if (!(a.value > 0.0)) {
    throw DomainError("sqrt of nonpositive value " + std::to_string(a.value));
  }
  const double r = std::sqrt(a.value);
  return a.apply(r, 0.5 / r, -0.25 / (r * a.value));
}

Jet2 atan(const Jet2& a) {
  const double d = 1.0 / (1.0 + a.value * a.value);
  return a.apply(std::atan(a.value), d, -2.0 * a.value * d * d);
}

Jet2 pow(const Jet2& a, double r) {
  const double x = a.value;
  const bool integer = std::floor(r) == r;
  if (integer) {
    if (r == 0.0) return Jet2::constant(1.0, a.dim());
    if (x == 0.0 && r < 0.0) throw DomainError("zero raised to a negative power");
    const double f0 = std::pow(x, r);
    const double f1 = r * std::pow(x, r - 1.0);
    const double f2 = r * (r - 1.0) * std::pow(x, r - 2.0);
    return a.apply(f0, f1, f2);
  }
  if (!(x > 0.0)) {
    throw DomainError("non-integer power of nonpositive value " + std::to_string(x));
  }
  const double f0 = std::pow(x, r);
  return a.apply(f0, r * f0 / x, r * (r - 1.0) * f0 / (x * x));
}

Jet2 pow(const Jet2& a, const Jet2& b) {
  if (b.grad.isZero(0.0) && b.hess.isZero(0.0)) return pow(a, b.value);
  return exp(b * log(a));
}

Jet2 smootherstep(const Jet2& s) {
  if (s.value <= 0.0) return Jet2::constant(0.0, s.dim());
  if (s.value >= 1.0) return Jet2::constant(1.0, s.dim());
  const double x = s.value;
  const double f0 = x * x * x * (x * (6.0 * x - 15.0) + 10.0);
  const double f1 = 30.0 * x * x * (x - 1.0) * (x - 1.0);
  const double f2 = 60.0 * x * (x - 1.0) * (2.0 * x - 1.0);
  return s.apply(f0, f1, f2);
}

}  // namespace lcs

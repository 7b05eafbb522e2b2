#include "lcs/squeeze.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "lcs/error.hpp"
#include "lcs/solvers.hpp"

namespace lcs {

namespace {

double bump(double s, double a) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return std::exp(-a / s + a / (s - 1.0));
}

void check(const SqueezeProfile& p) {
  if (!(p.r0 > 0.0 && p.r > p.r0 && p.epsilon > 0.0 && p.epsilon < p.r0 && p.a > 0.0)) {
    throw PreconditionError("squeeze profile needs 0 < eps < r0 < r and a > 0", {p.r0, p.r, p.epsilon}, p.epsilon);
  }
  const double lhs = std::log(1.0 + p.epsilon / p.r0);
  const double rhs = (p.r - p.r0) / p.r;
  if (!(lhs < rhs)) {
    throw PreconditionError("inadmissible eps: ln(1 + eps/r0) = " + std::to_string(lhs) +
                                " is not below (r - r0)/r = " + std::to_string(rhs),
                            {p.r0, p.r, p.epsilon}, lhs);
  }
}

}  // namespace

double squeeze_bump_normalization(double a) {
  static std::mutex mu;
  static std::map<double, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(a);
  if (it != cache.end()) return it->second;
  const double b = 1.0 / simpson([a](double s) { return bump(s, a); }, 0.0, 1.0, 4096);
  cache.emplace(a, b);
  return b;
}

double squeeze_blend(double s, double a) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double b = squeeze_bump_normalization(a);
  // Integrate from the nearer end; the integrand is flat at both.
  if (s <= 0.5) return b * simpson([a](double x) { return bump(x, a); }, 0.0, s, 512);
  return 1.0 - b * simpson([a](double x) { return bump(x, a); }, s, 1.0, 512);
}

double squeeze_blend_derivative(double s, double a) { return squeeze_bump_normalization(a) * bump(s, a); }

double squeeze_slope(const SqueezeProfile& p) { return p.r0 * std::log(1.0 + p.epsilon / p.r0) / (p.r - p.r0); }

std::pair<double, double> squeeze_profile(const SqueezeProfile& p, double t) {
  check(p);
  if (t < 0.0 || t > p.r) throw DomainError("squeeze profile evaluated outside [0, r]", {t});
  const double K = squeeze_slope(p);
  if (t <= p.r0 - p.epsilon) return {t, 1.0};
  if (t >= p.r0) {
    const double e = (t - p.r0) / (p.r - p.r0);
    const double v = p.r0 * std::pow(1.0 + p.epsilon / p.r0, e);
    return {v, v * std::log(1.0 + p.epsilon / p.r0) / (p.r - p.r0)};
  }
  // Blend of the identity with the tangent line of the log profile at r0.
  const double s = (t - p.r0 + p.epsilon) / p.epsilon;
  const double H = squeeze_blend(s, p.a);
  const double dH = squeeze_blend_derivative(s, p.a) / p.epsilon;
  const double line = p.r0 + (t - p.r0) * K;
  return {H * line + (1.0 - H) * t, H * K + (1.0 - H) + dH * (line - t)};
}

double squeeze_blend_derivative_bound(const SqueezeProfile& p) {
  check(p);
  const double K = squeeze_slope(p);
  // alpha' = 1 - H(1 - K) + H'(s)(1 - s)(1 - K); maximize on a fine grid.
  double best = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double s = i / 20000.0;
    const double v =
        1.0 - squeeze_blend(s, p.a) * (1.0 - K) + squeeze_blend_derivative(s, p.a) * (1.0 - s) * (1.0 - K);
    best = std::max(best, v);
  }
  return best;
}

}  // namespace lcs

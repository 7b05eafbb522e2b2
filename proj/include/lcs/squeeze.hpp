#pragma once

#include <utility>

namespace lcs {

/// Radial profile that keeps t below r0 - eps, bends on [r0 - eps, r0] and
/// grows log-linearly from r0 to r0 + eps on [r0, r].
struct SqueezeProfile {
  double r0 = 1.0;
  double r = 2.0;
  double epsilon = 0.1;
  double a = 1.0;  // sharpness of the bump e^{-a/s + a/(s-1)}
};

/// Normalization b with H(1) = 1, where H' = b e^{-a/s + a/(s-1)}.
double squeeze_bump_normalization(double a);
/// H on [0, 1]: 0 at 0, 1 at 1, flat to all orders at both ends.
double squeeze_blend(double s, double a);
double squeeze_blend_derivative(double s, double a);

/// Slope of the log profile at r0: r0 ln(1 + eps/r0) / (r - r0).
double squeeze_slope(const SqueezeProfile& p);

/// (alpha(t), alpha'(t)) for t in [0, r]. Throws PreconditionError when the
/// profile is inadmissible (needs r0 < r, eps < r0 and ln(1 + eps/r0) <
/// (r - r0)/r) and DomainError outside [0, r].
std::pair<double, double> squeeze_profile(const SqueezeProfile& p, double t);

/// Sup of alpha' over the blend zone in closed form: the bump term adds
/// (1 - K) max_s H'(s)(1 - s), which does not depend on eps.
double squeeze_blend_derivative_bound(const SqueezeProfile& p);

}  // namespace lcs

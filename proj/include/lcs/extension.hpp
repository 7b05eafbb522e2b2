#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lcs/chords.hpp"
#include "lcs/radial_field.hpp"

namespace lcs {

/// One point of L over a base point: the segment t -> (q, t p), t in [0, 1].
struct Branch {
  Point param;
  Vec covector;
  double length = 0.0;  // |p|
};

/// The union of L's straight-down segments and the 0-section, indexed by base
/// grid point (the star above q).
struct CoreSkeleton {
  ModelManifold base;
  std::vector<Point> base_points;
  std::vector<std::vector<Branch>> stars;
  int max_branches = 0;
  int nonzero_branches = 0;
};

/// Preimages of every base point under pi o i, by Newton from parameter grid
/// seeds, deduplicated.
CoreSkeleton build_core(const ParametricEmbedding& e, const std::vector<Point>& base_points, int param_per_axis = 32);

/// Throws PreconditionError citing the worst chord when some Liouville chord
/// of L has (ln h(end) - ln h(start)) / ln t >= 1.
void require_unobstructed(const ParametricEmbedding& e, const ExactnessCertificate& c, const ScalarField& h_on_l,
                          const ChordOptions& opt = {});

struct ZeroPatch {
  std::vector<double> values;        // per skeleton base point
  double max_h = 0.0;                // max of h over L
  std::vector<Point> intersections;  // base points of L meeting the 0-section
  bool degenerate = false;           // L meets the 0-section in an open set
  double blend_width = 1.0;
  /// Largest jump of the first difference quotient between adjacent base
  /// cells; C^1 at grid scale when below 10 grid steps.
  double c1_jump = 0.0;
  double step = 0.0;
  bool c1_ok = false;
};

/// Values on a 0-section collar: max(h) away from L cap M, cubically blended
/// into h(q, 0) within blend_width of the intersections.
ZeroPatch near_zero_extension(const ScalarField& h, const ParametricEmbedding& e, const CoreSkeleton& core,
                              double blend_width = 1.0);

/// Log-linear interpolation along one ray between (r_in, v_in) and
/// (r_out, v_out).
struct RaySegment {
  int b = 0, d = 0;
  double r_in = 0.0, r_out = 0.0;
  double v_in = 1.0, v_out = 1.0;
};

/// (ln v_out - ln v_in) / ln(r_out / r_in).
double log_linear_slope(const RaySegment& s);

/// Fills the nodes with r in [r_in, r_out] on each segment's ray. A slope
/// >= 1 - tol is rejected with a PreconditionError naming the ray. Returns the
/// largest slope.
double radial_log_interpolation(RadialField& F, const std::vector<RaySegment>& segments, double tol = 1e-8);

/// Convolution over base and log-radius indices with (1 - |x|^2)^3 on a ball
/// of `kernel_steps` grid steps, renormalized where the ball leaves the grid.
RadialField mollify(const RadialField& F, double kernel_steps);

/// Smallest r_outer with |ln F(r_inner)| / ln(r_outer / r_inner) < 1 - margin
/// on every ray.
double minimal_outer_radius(const RadialField& F, double r_inner, double margin);

/// Log-linear taper from F(r_inner) to 1 at r_outer, exactly 1 beyond.
RadialField outer_flatten(const RadialField& F, double r_inner, double r_outer, double margin = 0.5);

struct RadialBoundChecks {
  std::optional<double> r_outer;             // shell that must be exactly 1
  const std::vector<std::uint8_t>* collar = nullptr;  // node mask
  std::optional<ScalarField> h;              // reference on the collar
};

struct RadialBoundReport {
  double max_slope = 0.0;
  int worst_b = 0, worst_d = 0, worst_r = 0;
  Point worst;
  bool bound_ok = false;
  bool outer_ok = true;
  double outer_max_deviation = 0.0;
  double collar_max_error = 0.0;
  bool collar_ok = true;
  bool pass = false;
};

/// Max of the centered log-difference along radii (d ln g(Z)), plus the
/// optional outer-shell and collar checks.
RadialBoundReport verify_radial_bound(const RadialField& F, const RadialBoundChecks& checks = {});

struct ExtensionOptions {
  RadialGridSpec grid;
  double collar_log_width = 0.15;  // L-collar is l e^{-w} <= r <= l e^{w}
  double zero_radius = 0.05;
  double blend_width = 1.0;
  double kernel_steps = 2.0;
  double margin = 0.5;
  int param_per_axis = 32;
  ChordOptions chords;
};

struct ExtensionResult {
  RadialField g;
  std::vector<std::uint8_t> collar;
  CoreSkeleton core;
  ZeroPatch zero;
  std::vector<RaySegment> segments;
  double interpolated_max = 0.0;
  double mollified_max = 0.0;
  double r_inner = 0.0, r_outer = 0.0;
  RadialBoundReport report;
};

/// g > 0 on T*M, equal to h near L, 1 outside a compact, with d ln g(Z) < 1.
/// h is given on T*M and must be positive on L. MVT-obstructed input is
/// refused before the grid is allocated.
ExtensionResult build_extension(const ParametricEmbedding& e, const ExactnessCertificate& c, const ScalarField& h,
                                const ExtensionOptions& opt = {});

/// The radial field as a function on T*M: Catmull-Rom in base and log radius,
/// gradient by central differences, Hessian zero. Clamped below r_min, 1 beyond r_max.
ScalarField radial_field_function(const RadialField& F);

/// h'(i(u) + N(u) s) = f(u) - df(X_H) <X_V, N s> / |X_V|^2 on a tube around
/// L, where Z = X_H + X_V splits the Liouville field along L into TL and its
/// Euclidean normal N.
struct CollarExtension {
  ParametricEmbedding e;
  ScalarField f;  // on the source
  double width = 0.05;
  Eigen::MatrixXd normal_frame(const Point& u) const;
  Point point(const Point& u, const Vec& s) const;
  double value(const Point& u, const Vec& s) const;
};

/// Throws PreconditionError (suggesting translate_by_form) if f <= 0.
CollarExtension near_lagrangian_extension(const ParametricEmbedding& e, const ExactnessCertificate& c,
                                          double width = 0.05);

struct CollarReport {
  double sup_log_derivative = 0.0;
  Point worst_u;
  Vec worst_s;
  double min_normal_part = 0.0;  // min |X_V| over the parameter grid
  int samples = 0;
};

/// sup |d ln h'(Z)| over a parameter grid times offsets s in [-width, width]^n.
CollarReport collar_log_derivative(const CollarExtension& x, int per_axis = 32, int offsets = 5);

}  // namespace lcs

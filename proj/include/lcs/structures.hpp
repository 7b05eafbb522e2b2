#pragma once

#include <optional>
#include <vector>

#include "lcs/forms.hpp"

namespace lcs {

/// (T*M, lambda, beta) with lambda = sum p_i dq_i and beta pulled back from a
/// closed 1-form on M. omega = d_beta lambda.
struct CotangentLcsStructure {
  ModelManifold base;
  ModelManifold total;
  Form base_beta;  // on M
  Form lambda;     // on T*M
  Form beta;       // on T*M
  Form omega;      // on T*M
  bool beta_is_zero = true;

  /// Coefficients of beta at a base point.
  Vec beta_at(const Point& q) const;
  /// Jets of the beta coefficients at a base point, in base coordinates.
  std::vector<Jet2> beta_jets(const Point& q) const;
};

/// Builds the structure; `base_beta` defaults to zero and is validated closed.
CotangentLcsStructure make_cotangent_structure(const ModelManifold& base, std::optional<Form> base_beta = {},
                                               const ClosednessOptions& opt = {});
/// beta = sum c_i dq_i on M.
Form constant_one_form(const ModelManifold& m, const std::vector<double>& coeffs);
Form canonical_liouville(const ModelManifold& cotangent);
/// pi: T*M -> M (or J^1 M -> M).
SmoothMap bundle_projection(const ModelManifold& bundle);

VectorField liouville_vector_field(const CotangentLcsStructure& s);
/// (q, p) -> (q, e^t p).
Point liouville_flow(const CotangentLcsStructure& s, const Point& x, double t);

/// dg(Z) at a point of T*M, from the jet of g.
double radial_derivative(const Jet2& g, const ModelManifold& cotangent, const Point& x);

struct RadialCriterionReport {
  std::vector<double> values;  // d ln g(Z) per sample
  double sup = 0.0;
  Point argmax;
  bool pass = false;  // sup < 1
};

/// d ln g(Z_lambda) over samples; nonpositive g throws DomainError at the point.
RadialCriterionReport criterion_radial_log_derivative(const ScalarField& g, const CotangentLcsStructure& s,
                                                      const std::vector<Point>& samples);

struct RescalingOptions {
  int grid_count = 4096;
  double fiber_radius = 4.0;
};

/// phi(q, p) = (q, e^{-g} p). Throws PreconditionError if dg(Z) >= 1 at a grid
/// point, reporting the worst one.
SmoothMap rescaling_diffeo(const CotangentLcsStructure& s, const ScalarField& g, const RescalingOptions& opt = {});

struct GaugeTransform {
  ScalarField g;
  std::optional<ScalarField> f_shift;
};

struct LcsPair {
  Form lambda;
  Form beta;
  Form omega;
};

/// (lambda, beta) -> (e^g (lambda + d_beta f), beta + dg).
LcsPair gauge_apply(const GaugeTransform& t, const CotangentLcsStructure& s);

}  // namespace lcs

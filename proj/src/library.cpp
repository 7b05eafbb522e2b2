#include "lcs/lagrangian.hpp"

namespace lcs {

namespace {

ModelManifold torus_parameters() { return ModelManifold::make(2, 0).with_labels({"theta", "phi"}); }

CotangentLcsStructure torus_structure() {
  const ModelManifold t2 = ModelManifold::make(2, 0);
  return make_cotangent_structure(t2, constant_one_form(t2, {0.0, 1.0}));
}

}  // namespace

// (theta, phi) -> (2 theta, phi, cos(theta)/2, -sin(theta)); primitive sin(theta).
ParametricEmbedding example_torus_1() {
  const ModelManifold L = torus_parameters();
  const auto s = torus_structure();
  const ScalarField th = ScalarField::coordinate(L, 0), ph = ScalarField::coordinate(L, 1);
  SmoothMap map = SmoothMap::from_fields(L, s.total, {2.0 * th, ph, 0.5 * cos(th), -sin(th)});
  return make_embedding("example-torus-1", s, map, sin(th));
}

// (theta, phi) -> (cos theta, phi, 3 sin theta cos theta, sin^3 theta);
// primitive -sin^3 theta. The first base coordinate stays inside [-1, 1].
ParametricEmbedding example_torus_2() {
  const ModelManifold L = torus_parameters();
  const auto s = torus_structure();
  const ScalarField th = ScalarField::coordinate(L, 0), ph = ScalarField::coordinate(L, 1);
  const ScalarField sn = sin(th), cs = cos(th);
  SmoothMap map = SmoothMap::from_fields(L, s.total, {cs, ph, 3.0 * sn * cs, pow(sn, 3.0)});
  return make_embedding("example-torus-2", s, map, -pow(sn, 3.0));
}

// u -> (u - sin u, 1/2 + cos u + sin u) on T*T^1, beta = 0. At u = 0 the
// tangent is vertical and the fiber is 3/2, so Z lies in TL there.
ParametricEmbedding example_planted_tangency() {
  const ModelManifold L = ModelManifold::make(1, 0).with_labels({"u"});
  const ModelManifold t1 = ModelManifold::make(1, 0);
  const auto s = make_cotangent_structure(t1);
  const ScalarField u = ScalarField::coordinate(L, 0);
  SmoothMap map = SmoothMap::from_fields(L, s.total, {u - sin(u), 0.5 + cos(u) + sin(u)});
  const ScalarField f = 3.0 + 0.5 * sin(u) - 0.25 * sin(2.0 * u) - cos(u) - 0.5 * sin(u) * sin(u);
  return make_embedding("planted-tangency", s, map, f);
}

}  // namespace lcs

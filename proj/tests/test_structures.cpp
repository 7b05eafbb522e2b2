#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lcs/error.hpp"
#include "lcs/sampling.hpp"
#include "lcs/structures.hpp"

using namespace lcs;
using std::numbers::pi;

namespace {

Point pt(std::initializer_list<double> v) {
  Point x(static_cast<int>(v.size()));
  int i = 0;
  for (double a : v) x(i++) = a;
  return x;
}

std::vector<Point> samples(const ModelManifold& m, int count, double radius, std::uint64_t seed = 0) {
  SampleOptions so;
  so.count = count;
  so.line_radius = radius;
  so.seed = seed;
  return halton_points(m, so);
}

}  // namespace

TEST_CASE("cotangent structure with a Lee form") {
  const auto T2 = ModelManifold::make(2, 0);
  const auto s = make_cotangent_structure(T2, Form::dx(T2, 1));
  CHECK(s.total.dim() == 4);
  CHECK_FALSE(s.beta_is_zero);
  const Vec b = s.beta_at(pt({0.2, 0.3}));
  CHECK(b(0) == 0.0);
  CHECK(b(1) == 1.0);
  // beta on T*M is the pullback: no fiber components.
  const FormValue bv = s.beta.eval(pt({0.2, 0.3, 1.0, -1.0}));
  CHECK(bv.at(mask_of({1})) == 1.0);
  CHECK(bv.at(mask_of({2})) == 0.0);
  // omega = d lambda - beta ^ lambda.
  const Point x = pt({0.2, 0.3, 1.5, -0.5});
  const FormValue w = s.omega.eval(x);
  CHECK(w.component({2, 0}) == doctest::Approx(1.0));
  CHECK(w.component({3, 1}) == doctest::Approx(1.0));
  // -beta ^ lambda = -dq2 ^ p1 dq1 = p1 dq1 ^ dq2.
  CHECK(w.component({0, 1}) == doctest::Approx(1.5));
  CHECK_THROWS_AS(make_cotangent_structure(T2, sin(ScalarField::coordinate(T2, 0)) * Form::dx(T2, 1)),
                  ValidationError);
}

TEST_CASE("Liouville vector field and flow") {
  const auto s = make_cotangent_structure(ModelManifold::make(2, 0));
  const Vec z = liouville_vector_field(s).values(pt({0.0, 0.0, 1.0, 2.0}));
  CHECK(z(0) == 0.0);
  CHECK(z(1) == 0.0);
  CHECK(z(2) == 1.0);
  CHECK(z(3) == 2.0);
  const Point y = liouville_flow(s, pt({0.5, 1.0, 1.0, -2.0}), std::log(3.0));
  CHECK(y(0) == 0.5);
  CHECK(y(2) == doctest::Approx(3.0));
  CHECK(y(3) == doctest::Approx(-6.0));
  // i_Z d lambda = lambda.
  SampleOptions so;
  so.count = 20;
  for (const auto& x : halton_points(s.total, so)) {
    const FormValue l = interior_product(liouville_vector_field(s), d(s.lambda)).eval(x);
    CHECK(max_abs_diff(l, s.lambda.eval(x)) <= 1e-14);
  }
}

TEST_CASE("radial criterion for g = 1") {
  const auto s = make_cotangent_structure(ModelManifold::make(1, 0));
  const auto rep = criterion_radial_log_derivative(ScalarField::constant(s.total, 1.0), s, samples(s.total, 64, 3));
  CHECK(rep.sup == 0.0);
  CHECK(rep.pass);
}

TEST_CASE("radial criterion for g = exp(r^2/2) is r^2") {
  const auto s = make_cotangent_structure(ModelManifold::make(2, 0));
  const auto p1 = ScalarField::coordinate(s.total, 2), p2 = ScalarField::coordinate(s.total, 3);
  const ScalarField g = exp(0.5 * (p1 * p1 + p2 * p2));
  const auto inner = samples(s.total, 200, 0.6);
  double r2max = 0.0;
  for (const auto& x : inner) r2max = std::max(r2max, x(2) * x(2) + x(3) * x(3));
  const auto rep = criterion_radial_log_derivative(g, s, inner);
  CHECK(rep.sup == doctest::Approx(r2max).epsilon(1e-12));
  CHECK(rep.pass);  // every sample has r < 1
  const auto wide = criterion_radial_log_derivative(g, s, samples(s.total, 200, 2.0));
  CHECK_FALSE(wide.pass);
}

TEST_CASE("radial criterion for g = 1 + sin(p)/2 against a direct scan") {
  const auto s = make_cotangent_structure(ModelManifold::make(1, 0));
  const auto p = ScalarField::coordinate(s.total, 1);
  const ScalarField g = 1.0 + 0.5 * sin(p);
  std::vector<Point> grid;
  double oracle = -1e300;
  for (int i = 0; i <= 2000; ++i) {
    const double pv = -6.0 + 12.0 * i / 2000;
    grid.push_back(pt({1.0, pv}));
    oracle = std::max(oracle, 0.5 * pv * std::cos(pv) / (1 + 0.5 * std::sin(pv)));
  }
  const auto rep = criterion_radial_log_derivative(g, s, grid);
  CHECK(rep.sup == doctest::Approx(oracle).epsilon(1e-13));
  CHECK(rep.pass == (oracle < 1.0));
}

TEST_CASE("nonpositive factor is a domain error") {
  const auto s = make_cotangent_structure(ModelManifold::make(1, 0));
  const ScalarField g = ScalarField::coordinate(s.total, 1);
  CHECK_THROWS_AS(criterion_radial_log_derivative(g, s, {pt({0.0, -1.0})}), DomainError);
}

TEST_CASE("rescaling with g = 0 is the identity") {
  const auto s = make_cotangent_structure(ModelManifold::make(2, 0));
  const SmoothMap phi = rescaling_diffeo(s, ScalarField::constant(s.total, 0.0));
  for (const auto& x : samples(s.total, 30, 3)) CHECK((phi.apply(x) - x).norm() == 0.0);
}

TEST_CASE("rescaling with constant g scales fibers and lambda") {
  const auto s = make_cotangent_structure(ModelManifold::make(1, 0));
  const double c = 0.7;
  const SmoothMap phi = rescaling_diffeo(s, ScalarField::constant(s.total, c));
  const Form pl = pullback(phi, s.lambda);
  for (const auto& x : samples(s.total, 30, 3)) {
    const Point y = phi.apply(x);
    CHECK(y(0) == doctest::Approx(x(0)));
    CHECK(y(1) == doctest::Approx(std::exp(-c) * x(1)));
    CHECK(max_abs_diff(pl.eval(x), std::exp(-c) * s.lambda.eval(x)) <= 1e-14);
  }
}

TEST_CASE("rescaling with g = atan(p)/2 is accepted and pulls lambda to e^-g lambda") {
  const auto s = make_cotangent_structure(ModelManifold::make(1, 0));
  const auto p = ScalarField::coordinate(s.total, 1);
  const ScalarField g = 0.5 * atan(p);
  // dg(Z) = p / (2 (1 + p^2)) <= 1/4.
  for (double pv : {-3.0, 0.0, 1.0, 2.5}) {
    CHECK(radial_derivative(g.eval(pt({0.0, pv})), s.total, pt({0.0, pv})) ==
          doctest::Approx(0.5 * pv / (1 + pv * pv)));
  }
  const SmoothMap phi = rescaling_diffeo(s, g);
  const Form pl = pullback(phi, s.lambda);
  const Form expected = exp(-g) * s.lambda;
  for (const auto& x : samples(s.total, 100, 4)) CHECK(max_abs_diff(pl.eval(x), expected.eval(x)) <= 1e-9);
}

TEST_CASE("rescaling refuses dg(Z) >= 1 and reports the worst point") {
  const auto s = make_cotangent_structure(ModelManifold::make(1, 0));
  const auto p = ScalarField::coordinate(s.total, 1);
  try {
    rescaling_diffeo(s, p * p);
    FAIL("expected a PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(e.worst_value() >= 1.0);
    REQUIRE(e.point().size() == 2);
    CHECK(2 * e.point()[1] * e.point()[1] == doctest::Approx(e.worst_value()));
  }
}

TEST_CASE("gauge transformations") {
  const auto T2 = ModelManifold::make(2, 0);
  const auto s = make_cotangent_structure(T2, Form::dx(T2, 0));
  const auto pts = samples(s.total, 40, 3);

  SUBCASE("trivial gauge") {
    const LcsPair id = gauge_apply({ScalarField::constant(s.total, 0.0), ScalarField::constant(s.total, 0.0)}, s);
    for (const auto& x : pts) {
      CHECK(max_abs_diff(id.lambda.eval(x), s.lambda.eval(x)) <= 1e-15);
      CHECK(max_abs_diff(id.beta.eval(x), s.beta.eval(x)) <= 1e-15);
    }
  }
  SUBCASE("zero Lee form gives lambda + df") {
    const auto s0 = make_cotangent_structure(T2);
    const ScalarField f = sin(ScalarField::coordinate(s0.total, 0)) * ScalarField::coordinate(s0.total, 3);
    const LcsPair pr = gauge_apply({ScalarField::constant(s0.total, 0.0), f}, s0);
    const Form expected = s0.lambda + d(Form::scalar(f));
    for (const auto& x : pts) CHECK(max_abs_diff(pr.lambda.eval(x), expected.eval(x)) <= 1e-14);
  }
  SUBCASE("omega rescales conformally") {
    const auto q2 = ScalarField::coordinate(s.total, 1), p1 = ScalarField::coordinate(s.total, 2);
    const ScalarField g = 0.3 * cos(q2) + 0.1 * p1;
    const ScalarField f = cos(ScalarField::coordinate(s.total, 0)) + p1 * p1;
    const LcsPair pr = gauge_apply({g, f}, s);
    for (const auto& x : pts) {
      const FormValue expected = std::exp(g.value(x)) * s.omega.eval(x);
      CHECK(max_abs_diff(pr.omega.eval(x), expected) <= 1e-12);
      CHECK(d(pr.beta).eval(x).max_abs() <= 1e-14);
    }
  }
}

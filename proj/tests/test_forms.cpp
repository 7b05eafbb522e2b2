#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lcs/chords.hpp"
#include "lcs/error.hpp"
#include "lcs/forms.hpp"
#include "lcs/lagrangian.hpp"
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

// Trigonometric-polynomial coefficient; smooth and periodic in circle slots.
ScalarField random_coeff(const ModelManifold& m, std::mt19937& rng) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  ScalarField f = ScalarField::constant(m, c(rng));
  for (int i = 0; i < m.dim(); ++i) {
    const ScalarField x = ScalarField::coordinate(m, i);
    if (m.kind(i) == CoordKind::Circle) {
      f = f + c(rng) * sin(x + c(rng)) + c(rng) * cos(2.0 * x);
    } else {
      f = f + c(rng) * x + c(rng) * x * x;
    }
  }
  return f;
}

Form random_form(const ModelManifold& m, int degree, std::mt19937& rng) {
  Form a = Form::zero(m, degree);
  for (Mask k : masks(m.dim(), degree)) {
    Form basis = Form::constant(m, 0, {{0u, 1.0}});
    for (int i = 0; i < m.dim(); ++i) {
      if (k & (1u << i)) basis = wedge(basis, Form::dx(m, i));
    }
    a = a + random_coeff(m, rng) * basis;
  }
  return a;
}

// Closed 1-form: constant part plus an exact part.
Form random_closed(const ModelManifold& m, std::mt19937& rng) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::map<Mask, double> k;
  for (int i = 0; i < m.dim(); ++i) k[1u << i] = c(rng);
  return Form::constant(m, 1, k) + d(Form::scalar(random_coeff(m, rng)));
}

}  // namespace

TEST_CASE("mask bookkeeping") {
  CHECK(masks(4, 2).size() == 6);
  CHECK(masks(4, 0).size() == 1);
  CHECK(mask_position(4, mask_of({0, 1})) == 0);
  CHECK(mask_position(4, mask_of({2, 3})) == 5);
  CHECK(mask_position(4, mask_of({0, 1, 2})) == 0);
}

TEST_CASE("antisymmetric component access") {
  const auto M = ModelManifold::make(0, 3);
  const Form w = wedge(Form::dx(M, 0), Form::dx(M, 2));
  const FormValue v = w.eval(pt({0, 0, 0}));
  CHECK(v.component({0, 2}) == 1.0);
  CHECK(v.component({2, 0}) == -1.0);
  CHECK(v.component({0, 0}) == 0.0);
  const Eigen::MatrixXd A = v.matrix();
  CHECK(A(0, 2) == 1.0);
  CHECK(A(2, 0) == -1.0);
}

TEST_CASE("pfaffian in dimensions 2 and 4") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
  A(0, 1) = 3.0;
  A(1, 0) = -3.0;
  CHECK(pfaffian(A) == doctest::Approx(3.0));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      B(i, j) = u(rng);
      B(j, i) = -B(i, j);
    }
  const double pf = B(0, 1) * B(2, 3) - B(0, 2) * B(1, 3) + B(0, 3) * B(1, 2);
  CHECK(pfaffian(B) == doctest::Approx(pf).epsilon(1e-14));
  CHECK(pf * pf == doctest::Approx(B.determinant()).epsilon(1e-12));
}

TEST_CASE("exterior derivative squares to zero on random forms") {
  std::mt19937 rng(11);
  const auto M = ModelManifold::make(2, 0).cotangent();
  SampleOptions so;
  so.count = 20;
  for (int deg = 0; deg <= 2; ++deg) {
    const Form a = random_form(M, deg, rng);
    const Form dda = d(d(a));
    for (const auto& x : halton_points(M, so)) CHECK(dda.eval(x).max_abs() <= 1e-12);
  }
}

TEST_CASE("Lichnerowicz differential squares to zero on random triples") {
  std::mt19937 rng(2024);
  const auto M = ModelManifold::make(2, 0).cotangent();
  std::uniform_real_distribution<double> ang(0, 2 * pi), lin(-3, 3);
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const Form a = random_form(M, trial % 3, rng);
    const Form b = random_closed(M, rng);
    const Form dda = lichnerowicz_d(lichnerowicz_d(a, b), b);
    worst = std::max(worst, dda.eval(pt({ang(rng), ang(rng), lin(rng), lin(rng)})).max_abs());
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("d_beta of sin(theta) with beta = d phi") {
  const auto T2 = ModelManifold::make(2, 0);
  const Form a = Form::scalar(sin(ScalarField::coordinate(T2, 0)));
  const Form db = lichnerowicz_d(a, Form::dx(T2, 1));
  const FormValue v0 = db.eval(pt({0.0, 0.0}));
  CHECK(v0.at(mask_of({0})) == doctest::Approx(1.0));
  CHECK(v0.at(mask_of({1})) == doctest::Approx(0.0));
  const FormValue v1 = db.eval(pt({0.9, 2.0}));
  CHECK(v1.at(mask_of({0})) == doctest::Approx(std::cos(0.9)));
  CHECK(v1.at(mask_of({1})) == doctest::Approx(-std::sin(0.9)));
}

TEST_CASE("zero Lee form reduces to the de Rham differential") {
  std::mt19937 rng(5);
  const auto M = ModelManifold::make(2, 0).cotangent();
  const Form a = random_form(M, 1, rng);
  const Form lhs = lichnerowicz_d(a, Form::zero(M, 1));
  const Form rhs = d(a);
  SampleOptions so;
  so.count = 30;
  for (const auto& x : halton_points(M, so)) CHECK(max_abs_diff(lhs.eval(x), rhs.eval(x)) <= 1e-14);
}

TEST_CASE("non-closed Lee form is rejected with its residual") {
  const auto T2 = ModelManifold::make(2, 0);
  const Form b = sin(ScalarField::coordinate(T2, 1)) * Form::dx(T2, 0);
  CHECK_THROWS_AS(validate_closed(b), ValidationError);
  try {
    lichnerowicz_d(Form::scalar(ScalarField::constant(T2, 1.0)), b);
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.residual() > 0.5);
    CHECK(e.point().size() == 2);
  }
  CHECK_NOTHROW(validate_closed(Form::dx(T2, 0) + d(Form::scalar(cos(ScalarField::coordinate(T2, 1))))));
}

TEST_CASE("wedge is graded commutative and contraction is a derivation") {
  std::mt19937 rng(9);
  const auto M = ModelManifold::make(1, 2);
  const Form a = random_form(M, 1, rng), b = random_form(M, 1, rng);
  const VectorField X = VectorField::from_components(M, {random_coeff(M, rng), random_coeff(M, rng),
                                                         random_coeff(M, rng)});
  SampleOptions so;
  so.count = 25;
  for (const auto& x : halton_points(M, so)) {
    CHECK((wedge(a, b).eval(x) + wedge(b, a).eval(x)).max_abs() <= 1e-14);
    CHECK(wedge(a, a).eval(x).max_abs() <= 1e-14);
    const FormValue lhs = interior_product(X, wedge(a, b)).eval(x);
    const FormValue ia = interior_product(X, a).eval(x), ib = interior_product(X, b).eval(x);
    const FormValue rhs = wedge(ia, b.eval(x)) - wedge(a.eval(x), ib);
    CHECK(max_abs_diff(lhs, rhs) <= 1e-14 * (1.0 + lhs.max_abs()));
  }
}

TEST_CASE("pullback of lambda along the first torus example") {
  const auto e = example_torus_1();
  const Form pl = pullback(e.map, e.target.lambda);
  const FormValue v = pl.eval(pt({pi / 4, 0.0}));
  CHECK(v.at(mask_of({0})) == doctest::Approx(std::cos(pi / 4)));
  CHECK(v.at(mask_of({1})) == doctest::Approx(-std::sin(pi / 4)));
}

TEST_CASE("pullback along the identity changes nothing") {
  std::mt19937 rng(4);
  const auto M = ModelManifold::make(2, 0).cotangent();
  const Form a = random_form(M, 2, rng);
  const Form pa = pullback(SmoothMap::identity(M), a);
  SampleOptions so;
  so.count = 40;
  for (const auto& x : halton_points(M, so)) CHECK(max_abs_diff(pa.eval(x), a.eval(x)) <= 1e-14);
}

TEST_CASE("pullback commutes with d") {
  std::mt19937 rng(6);
  const auto R2 = ModelManifold::make(0, 2);
  const auto x = ScalarField::coordinate(R2, 0), y = ScalarField::coordinate(R2, 1);
  const SmoothMap phi = SmoothMap::from_fields(R2, R2, {x + 0.3 * sin(y), y * exp(0.2 * x)});
  const Form a = random_form(R2, 1, rng);
  const Form lhs = pullback(phi, d(a));
  const Form rhs = d(pullback(phi, a));
  SampleOptions so;
  so.count = 30;
  so.line_radius = 1.0;
  for (const auto& p : halton_points(R2, so)) CHECK(max_abs_diff(lhs.eval(p), rhs.eval(p)) <= 1e-12);
}

TEST_CASE("canonical symplectic form has unit determinant") {
  const auto s = make_cotangent_structure(ModelManifold::make(2, 0));
  SampleOptions so;
  so.count = 100;
  const auto rep = check_nondegenerate(s.omega, halton_points(s.total, so), 1e-9);
  CHECK(rep.nondegenerate);
  for (double v : rep.abs_det) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("d(lambda/g) with g = exp(r^2/2) degenerates on the unit sphere bundle") {
  const auto s = make_cotangent_structure(ModelManifold::make(1, 0));
  const auto p = ScalarField::coordinate(s.total, 1);
  const ScalarField g = exp(0.5 * p * p);
  const Form w = d((1.0 / g) * s.lambda);
  // Closed form: (1 - p^2) e^{-p^2/2} dp ^ dq.
  for (double pv : {0.0, 0.5, 1.0, 1.7}) {
    const FormValue v = w.eval(pt({0.3, pv}));
    CHECK(std::abs(v.at(mask_of({0, 1}))) == doctest::Approx(std::abs(1 - pv * pv) * std::exp(-pv * pv / 2)));
  }
  const auto rep = check_nondegenerate(w, {pt({0.3, 1.0})}, 1e-9);
  CHECK_FALSE(rep.nondegenerate);
}

TEST_CASE("d_{d theta} of a contact form on S^1 x R^3 is nondegenerate") {
  const auto M = ModelManifold::from_kinds({CoordKind::Circle, CoordKind::Line, CoordKind::Line, CoordKind::Line});
  const auto x = ScalarField::coordinate(M, 1), y = ScalarField::coordinate(M, 2);
  const Form alpha = Form::dx(M, 3) + x * Form::dx(M, 2) - y * Form::dx(M, 1);
  const Form w = lichnerowicz_d(alpha, Form::dx(M, 0));
  SampleOptions so;
  so.count = 200;
  so.line_radius = 3.0;
  const auto rep = check_nondegenerate(w, halton_points(M, so), 1e-6);
  CHECK(rep.nondegenerate);
  // omega = 2 dx^dy - dtheta^dz - x dtheta^dy + y dtheta^dx, Pf = -2.
  for (double pf : rep.pfaffian) CHECK(pf == doctest::Approx(-2.0));
}

TEST_CASE("Reeb field identities on J^1 T^1") {
  const auto rep = reeb_identity_check(ModelManifold::make(1, 0).jet1(), 100, 0.5, 4.0);
  CHECK(rep.samples == 100);
  CHECK(rep.evaluation_defect <= 1e-12);
  CHECK(rep.contraction_defect <= 1e-12);
}

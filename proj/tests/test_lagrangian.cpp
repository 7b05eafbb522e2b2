#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lcs/error.hpp"
#include "lcs/lagrangian.hpp"
#include "lcs/moser.hpp"
#include "lcs/sampling.hpp"

using namespace lcs;
using std::numbers::pi;

namespace {

Point pt(std::initializer_list<double> v) {
  Point x(static_cast<int>(v.size()));
  int i = 0;
  for (double a : v) x(i++) = a;
  return x;
}

std::vector<Point> samples(const ModelManifold& m, int count, std::uint64_t seed = 0) {
  SampleOptions so;
  so.count = count;
  so.seed = seed;
  return halton_points(m, so);
}

PrimitiveOptions quick() {
  PrimitiveOptions o;
  o.nodes_per_axis = 32;
  return o;
}

double max_gap(const ScalarField& a, const ScalarField& b, const std::vector<Point>& pts) {
  double w = 0.0;
  for (const auto& x : pts) w = std::max(w, std::abs(a.value(x) - b.value(x)));
  return w;
}

}  // namespace

TEST_CASE("pulled forms of the first torus example") {
  const auto e = example_torus_1();
  const PulledForms pf = pulled_forms(e, pt({0.4, 1.1}));
  CHECK(pf.c(0) == doctest::Approx(std::cos(0.4)));
  CHECK(pf.c(1) == doctest::Approx(-std::sin(0.4)));
  CHECK(pf.b(0) == 0.0);
  CHECK(pf.b(1) == 1.0);
  CHECK(pf.dc(0, 0) == doctest::Approx(-std::sin(0.4)));
  CHECK(pf.dc(1, 0) == doctest::Approx(-std::cos(0.4)));
  CHECK(pf.image(0) == doctest::Approx(0.8));
}

TEST_CASE("torus examples and the zero section are Lagrangian") {
  for (const auto& e : {example_torus_1(), example_torus_2()}) {
    const auto rep = verify_lagrangian(e, parameter_grid(e.source, 64));
    CHECK(rep.pass);
    CHECK(rep.residual_sup <= 1e-9);
    CHECK(rep.immersion_ok);
  }
  const auto z = zero_section(make_cotangent_structure(ModelManifold::make(2, 0), Form::dx(ModelManifold::make(2, 0), 1)));
  const auto rz = verify_lagrangian(z, parameter_grid(z.source, 32));
  CHECK(rz.pass);
  CHECK(rz.residual_sup == 0.0);
}

TEST_CASE("graph of a non-closed form fails with the closed-form residual") {
  const auto T2 = ModelManifold::make(2, 0);
  const auto s = make_cotangent_structure(T2);
  const auto u1 = ScalarField::coordinate(T2, 0), u2 = ScalarField::coordinate(T2, 1);
  const auto e = make_embedding("bad", s, SmoothMap::from_fields(T2, s.total, {u1, u2, sin(u2), 0.0 * u1}));
  const auto rep = verify_lagrangian(e, parameter_grid(T2, 32));
  CHECK_FALSE(rep.pass);
  // i* d lambda = cos(u2) du2 ^ du1, sup 1 at u2 = 0.
  CHECK(rep.residual_sup == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exactness certificate of the first torus example") {
  const auto e = example_torus_1();
  const auto cert = solve_primitive(e, Point::Zero(2), quick());
  REQUIRE(cert.valid);
  CHECK(cert.residual_sup <= 1e-8);
  CHECK(cert.unique_primitive);
  CHECK(cert.multiplicative_holonomy[1] == doctest::Approx(std::exp(2 * pi)).epsilon(1e-6));
  CHECK(cert.beta_periods[0] == doctest::Approx(0.0));
  CHECK(cert.beta_periods[1] == doctest::Approx(2 * pi));
  CHECK(max_gap(*cert.solved_primitive, *e.declared_primitive, samples(e.source, 100)) <= 1e-8);
}

TEST_CASE("exactness certificate of the second torus example") {
  const auto e = example_torus_2();
  const auto cert = solve_primitive(e, Point::Zero(2), quick());
  REQUIRE(cert.valid);
  CHECK(cert.has_declared);
  CHECK(cert.declared_residual <= 1e-8);
  CHECK(max_gap(*cert.solved_primitive, *e.declared_primitive, samples(e.source, 100)) <= 1e-8);
}

TEST_CASE("translation by the Lee form shifts the primitive") {
  const auto e = example_torus_1();
  const auto same = translate_by_form(e, e.target.base_beta, 0.0);
  for (const auto& u : samples(e.source, 20)) CHECK((same.map.apply(u) - e.map.apply(u)).norm() == 0.0);

  const auto t = translate_by_form(e, e.target.base_beta, -2.0);
  const auto cert = solve_primitive(t, Point::Zero(2), quick());
  REQUIRE(cert.valid);
  const auto th = ScalarField::coordinate(e.source, 0);
  CHECK(max_gap(*cert.solved_primitive, sin(th) + 2.0, samples(e.source, 100)) <= 1e-8);
  const Point y = t.map.apply(pt({0.3, 0.2}));
  CHECK(y(3) == doctest::Approx(-std::sin(0.3) - 2.0));
}

TEST_CASE("translating a beta-graph gives the graph of f - c") {
  const auto T2 = ModelManifold::make(2, 0);
  const auto s = make_cotangent_structure(T2, Form::dx(T2, 1));
  const ScalarField f = 1.0 + 0.5 * cos(ScalarField::coordinate(T2, 0));
  const double c = 0.7;
  const auto a = translate_by_form(beta_graph(f, s), s.base_beta, c);
  const auto b = beta_graph(f - c, s);
  for (const auto& u : samples(T2, 50)) CHECK((a.map.apply(u) - b.map.apply(u)).norm() <= 1e-14);
}

TEST_CASE("beta-graphs") {
  const auto T2 = ModelManifold::make(2, 0);
  SUBCASE("f = 0 is the zero section") {
    const auto s = make_cotangent_structure(T2, Form::dx(T2, 0));
    const auto g = beta_graph(ScalarField::constant(T2, 0.0), s);
    for (const auto& u : samples(T2, 20)) {
      const Point y = g.map.apply(u);
      CHECK(y.tail(2).norm() == 0.0);
    }
  }
  SUBCASE("f = 1 with beta = dq1 is the graph of -dq1") {
    const auto s = make_cotangent_structure(T2, Form::dx(T2, 0));
    const auto g = beta_graph(ScalarField::constant(T2, 1.0), s);
    const Point y = g.map.apply(pt({1.0, 2.0}));
    CHECK(y(2) == -1.0);
    CHECK(y(3) == 0.0);
    const auto cert = solve_primitive(g, Point::Zero(2), quick());
    CHECK(cert.valid);
    CHECK(max_gap(*cert.solved_primitive, ScalarField::constant(T2, 1.0), samples(T2, 50)) <= 1e-8);
  }
  SUBCASE("f = cos q1 with beta = dq2 is recovered") {
    const auto s = make_cotangent_structure(T2, Form::dx(T2, 1));
    const ScalarField f = cos(ScalarField::coordinate(T2, 0));
    const auto g = beta_graph(f, s);
    CHECK(verify_lagrangian(g, parameter_grid(T2, 32)).pass);
    const auto cert = solve_primitive(g, Point::Zero(2), quick());
    REQUIRE(cert.valid);
    CHECK(cert.unique_primitive);
    CHECK(max_gap(*cert.solved_primitive, f, samples(T2, 100)) <= 1e-8);
  }
}

TEST_CASE("planted tangency certificate") {
  const auto e = example_planted_tangency();
  CHECK(verify_lagrangian(e, parameter_grid(e.source, 256)).pass);
  const auto cert = solve_primitive(e, Point::Zero(1));
  CHECK(cert.valid);
  CHECK(cert.declared_residual <= 1e-8);
  // The curve is vertical at u = 0 with fiber 3/2: Z = (0, 3/2) is tangent.
  const Eigen::MatrixXd J = e.map.jacobian(pt({0.0}));
  CHECK(J(0, 0) == doctest::Approx(0.0));
  CHECK(e.map.apply(pt({0.0}))(1) == doctest::Approx(1.5));
}

TEST_CASE("Legendrian jet graphs and their lifts") {
  const auto T1 = ModelManifold::make(1, 0);
  const auto S = ModelManifold::from_kinds({CoordKind::Circle}, {"theta"});
  SUBCASE("constant jet") {
    const double c = 1.5;
    const auto j = jet_graph(ScalarField::constant(T1, c));
    CHECK(legendrian_residual(j, samples(T1, 50)) == 0.0);
    const auto L = lift_legendrian(j, Form::dx(S, 0));
    const Point y = L.map.apply(pt({0.4, 2.0}));
    CHECK(y(0) == doctest::Approx(0.4));
    CHECK(y(1) == doctest::Approx(2.0));
    CHECK(y(2) == 0.0);
    CHECK(y(3) == doctest::Approx(-c));
    CHECK(L.declared_primitive->value(pt({0.4, 2.0})) == doctest::Approx(c));
    CHECK(verify_lagrangian(L, parameter_grid(L.source, 32)).pass);
  }
  SUBCASE("sin q jet") {
    const auto j = jet_graph(sin(ScalarField::coordinate(T1, 0)));
    CHECK(legendrian_residual(j, samples(T1, 50)) <= 1e-15);
    const auto L = lift_legendrian(j, Form::dx(S, 0));
    const auto cert = solve_primitive(L, Point::Zero(2), quick());
    REQUIRE(cert.valid);
    const ScalarField expected = sin(ScalarField::coordinate(L.source, 0));
    CHECK(max_gap(*cert.solved_primitive, expected, samples(L.source, 100)) <= 1e-8);
  }
  SUBCASE("over T^2 with dtheta1 + dtheta2") {
    const auto Q = ModelManifold::make(2, 0).with_labels({"a", "b"});
    const auto j = jet_graph(sin(ScalarField::coordinate(T1, 0)));
    const auto L = lift_legendrian(j, Form::dx(Q, 0) + Form::dx(Q, 1));
    CHECK(L.source.dim() == 3);
    const auto cert = solve_primitive(L, Point::Zero(3));
    CHECK(cert.valid);
    CHECK(cert.residual_sup <= 1e-8);
  }
  SUBCASE("non-Legendrian input is rejected") {
    const auto J = T1.jet1();
    const auto q = ScalarField::coordinate(T1, 0);
    LegendrianEmbedding bad{"bad", T1, J,
                            SmoothMap::from_fields(T1, J, {q, ScalarField::constant(T1, 1.0), 0.0 * q})};
    CHECK(legendrian_residual(bad, samples(T1, 10)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(lift_legendrian(bad, Form::dx(S, 0)), ValidationError);
  }
}

TEST_CASE("symplectization immersion pulls lambda back to df") {
  for (const auto& e : {example_torus_1(), example_torus_2()}) {
    const auto cert = solve_primitive(e, Point::Zero(2));
    REQUIRE(cert.valid);
    const SmoothMap imm = symplectization_immersion(e, cert);
    const Form pl = pullback(imm, e.target.lambda);
    const Form df = d(Form::scalar(*e.declared_primitive));
    double worst = 0.0;
    for (const auto& u : samples(e.source, 100)) worst = std::max(worst, max_abs_diff(pl.eval(u), df.eval(u)));
    CHECK(worst <= 1e-9);
  }
  const auto s = make_cotangent_structure(ModelManifold::make(1, 0), constant_one_form(ModelManifold::make(1, 0), {1.0}));
  const auto z = beta_graph(ScalarField::constant(s.base, 0.0), s);
  const auto cz = solve_primitive(z, Point::Zero(1));
  const SmoothMap imm = symplectization_immersion(z, cz);
  for (const auto& u : samples(z.source, 20)) CHECK((imm.apply(u) - z.map.apply(u)).norm() <= 1e-12);
}

TEST_CASE("contact lift with zero Lee form is the identity") {
  const auto J = ModelManifold::make(1, 0).jet1();
  const auto rep = contact_lift_check(J, Form::zero(ModelManifold::make(1, 0), 1), samples(J, 50));
  CHECK(rep.equal);
  CHECK(rep.max_difference == 0.0);
  CHECK(rep.nonvanishing);
}

TEST_CASE("cobordism gluing constants") {
  CHECK_FALSE(cobordism_gluing_constant(1.0, 2.0, 0.0).has_value());
  CHECK(*cobordism_gluing_constant(0.0, 0.0, 1.0) == doctest::Approx(0.0));
  CHECK(*cobordism_gluing_constant(std::exp(1.0) * 0.4, 0.4, 1.0) == doctest::Approx(0.0));
  CHECK(*cobordism_gluing_constant(1.0, 0.0, std::log(2.0)) == doctest::Approx(1.0));
}

TEST_CASE("generating functions") {
  const auto TR = ModelManifold::make(1, 1);  // q, xi
  const auto q = ScalarField::coordinate(TR, 0), xi = ScalarField::coordinate(TR, 1);
  Vec beta(2);
  beta << 0.0, 1.0;  // d theta on T^1 x S^1

  SUBCASE("xi^2 generates the zero section") {
    CHECK(quadratic_at_infinity_defect(xi * xi, 1) <= 1e-12);
    const ScalarField G = lift_generating_function(xi * xi, 1);
    CHECK(G.domain().dim() == 3);
    const auto pts = fiber_critical_points(G, 2, pt({0.7, 1.0}), beta);
    REQUIRE(pts.size() == 1);
    CHECK(std::abs(pts[0].xi(0)) <= 1e-12);
    CHECK(pts[0].p.norm() <= 1e-12);
  }
  SUBCASE("xi^2 + c generates the lift of a constant jet") {
    const double c = 1.25;
    const ScalarField G = lift_generating_function(xi * xi + c, 1);
    const auto pts = fiber_critical_points(G, 2, pt({0.7, 1.0}), beta);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].value == doctest::Approx(c));
    const auto S = ModelManifold::from_kinds({CoordKind::Circle}, {"theta"});
    const auto L = lift_legendrian(jet_graph(ScalarField::constant(ModelManifold::make(1, 0), c)), Form::dx(S, 0));
    const Point y = L.map.apply(pt({0.7, 1.0}));
    CHECK(pts[0].p(0) == doctest::Approx(y(2)));
    CHECK(pts[0].p(1) == doctest::Approx(y(3)));
  }
  SUBCASE("cubic front: critical set matches 3 xi^2 = sin q") {
    const ScalarField F = xi * xi * xi - xi * sin(q);
    CHECK(quadratic_at_infinity_defect(F, 1) > 1.0);
    CHECK_THROWS_AS(lift_generating_function(F, 1), ValidationError);
    GeneratingOptions o;
    o.require_quadratic = false;
    const ScalarField G = lift_generating_function(F, 1, o);
    for (double qv : {0.3, 1.2, 2.0, 4.0, 5.5}) {
      const auto pts = fiber_critical_points(G, 2, pt({qv, 0.0}), beta);
      // Brute force: sign changes of dF/dxi on a fine xi grid.
      int brute = 0;
      double prev = 0.0;
      for (int i = 0; i <= 20000; ++i) {
        const double x = -4.0 + 8.0 * i / 20000;
        const double v = 3 * x * x - std::sin(qv);
        if (i > 0 && prev * v < 0) ++brute;
        prev = v;
      }
      CHECK(static_cast<int>(pts.size()) == brute);
      for (const auto& g : pts) CHECK(3 * g.xi(0) * g.xi(0) == doctest::Approx(std::sin(qv)).epsilon(1e-10));
    }
  }
}

TEST_CASE("genericity") {
  SUBCASE("zero section is degenerate input") {
    const auto z = zero_section(make_cotangent_structure(ModelManifold::make(1, 0)));
    CHECK(genericity_check(z).degenerate_input);
  }
  SUBCASE("first torus example avoids the zero section") {
    const auto rep = genericity_check(example_torus_1());
    CHECK(rep.intersections.empty());
    CHECK_FALSE(rep.degenerate_input);
    // dq = diag(2, 1) never drops rank.
    CHECK(rep.vertical_tangencies.empty());
  }
  SUBCASE("graph of d cos q meets the zero section transversally at 0 and pi") {
    const auto s = make_cotangent_structure(ModelManifold::make(1, 0));
    const auto g = beta_graph(cos(ScalarField::coordinate(s.base, 0)), s);
    const auto rep = genericity_check(g);
    REQUIRE(rep.intersections.size() == 2);
    CHECK(rep.transverse);
    // Unit tangent (1, -1)/sqrt 2 at both points.
    CHECK(rep.min_transversality == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
    for (const auto& u : rep.intersections) CHECK(std::abs(std::sin(u(0))) <= 1e-10);
  }
  SUBCASE("planted tangency has a vertical tangency off the zero section") {
    const auto rep = genericity_check(example_planted_tangency());
    CHECK_FALSE(rep.vertical_tangencies.empty());
    CHECK(rep.min_distance_to_zero > 0.1);
  }
}

TEST_CASE("projection degrees") {
  const auto s = make_cotangent_structure(ModelManifold::make(2, 0));
  CHECK(projection_degree(zero_section(s)).degree == 1);
  const auto e1 = projection_degree(example_torus_1());
  CHECK(e1.degree == 2);
  CHECK(e1.preimages.size() == 2);
  const auto g = beta_graph(cos(ScalarField::coordinate(s.base, 0)) * sin(ScalarField::coordinate(s.base, 1)), s);
  CHECK(projection_degree(g).degree == 1);
}

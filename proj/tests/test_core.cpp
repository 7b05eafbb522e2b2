#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "lcs/chart.hpp"
#include "lcs/error.hpp"
#include "lcs/parallel.hpp"
#include "lcs/sampling.hpp"
#include "lcs/solvers.hpp"

using namespace lcs;
using std::numbers::pi;

namespace {

Point pt(std::initializer_list<double> v) {
  Point x(static_cast<int>(v.size()));
  int i = 0;
  for (double a : v) x(i++) = a;
  return x;
}

// Random polynomial of degree <= 3 in the coordinates of R^n.
ScalarField random_polynomial(const ModelManifold& m, std::mt19937& rng) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::uniform_int_distribution<int> idx(0, m.dim() - 1);
  ScalarField f = ScalarField::constant(m, c(rng));
  for (int k = 0; k < 6; ++k) {
    ScalarField term = ScalarField::constant(m, c(rng));
    const int deg = 1 + k % 3;
    for (int j = 0; j < deg; ++j) term = term * ScalarField::coordinate(m, idx(rng));
    f = f + term;
  }
  return f;
}

}  // namespace

TEST_CASE("manifold shapes") {
  const auto T2 = ModelManifold::make(2, 0);
  CHECK(T2.dim() == 2);
  CHECK(T2.circle_count() == 2);
  const auto C = T2.cotangent();
  CHECK(C.dim() == 4);
  CHECK(C.bundle() == Bundle::Cotangent);
  CHECK(C.base_dim() == 2);
  CHECK(C.kind(2) == CoordKind::Line);
  CHECK(C.kind(3) == CoordKind::Line);
  CHECK(C.base() == T2);
  const auto J = ModelManifold::make(1, 0).jet1();
  CHECK(J.dim() == 3);
  CHECK(J.bundle() == Bundle::Jet1);
  CHECK(J.kind(2) == CoordKind::Line);
  CHECK_THROWS_AS(ModelManifold::make(0, 0), DimensionError);
  CHECK_THROWS_AS(ModelManifold::make(5, 4), DimensionError);
  const auto L = ModelManifold::from_kinds({CoordKind::Circle, CoordKind::Line}, {"theta", "s"});
  CHECK(L.index_of("s") == 1);
  CHECK(L.index_of("nope") == -1);
}

TEST_CASE("circle normalization and shortest displacement") {
  const auto M = ModelManifold::make(1, 1);
  const Point x = M.normalize(pt({-0.5, -0.5}));
  CHECK(x(0) == doctest::Approx(2 * pi - 0.5));
  CHECK(x(1) == -0.5);
  const Point y = M.normalize(x);
  CHECK(y(0) == x(0));
  const Vec dv = M.displacement(pt({6.2, 0.0}), pt({0.1, 1.0}));
  CHECK(dv(0) == doctest::Approx(0.1 + 2 * pi - 6.2));
  CHECK(dv(1) == 1.0);
  CHECK(std::abs(wrap_angle(3 * pi)) == doctest::Approx(pi));
}

TEST_CASE("jet of sin at zero") {
  const auto T2 = ModelManifold::make(2, 0);
  const ScalarField f = sin(ScalarField::coordinate(T2, 0));
  const Jet2 j = f.eval(pt({0.0, 0.0}));
  CHECK(j.value == 0.0);
  CHECK(j.grad(0) == 1.0);
  CHECK(j.grad(1) == 0.0);
  CHECK(j.hess.norm() == 0.0);
}

TEST_CASE("jet of exp(q) p on T*T^1") {
  const auto C = ModelManifold::make(1, 0).cotangent();
  const ScalarField f = exp(ScalarField::coordinate(C, 0)) * ScalarField::coordinate(C, 1);
  const Jet2 j = f.eval(pt({0.0, 2.0}));
  CHECK(j.value == doctest::Approx(2.0));
  CHECK(j.grad(0) == doctest::Approx(2.0));
  CHECK(j.grad(1) == doctest::Approx(1.0));
  CHECK(j.hess(0, 0) == doctest::Approx(2.0));
  CHECK(j.hess(0, 1) == doctest::Approx(1.0));
  CHECK(j.hess(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("polynomial jets agree with central differences") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const auto R3 = ModelManifold::make(0, 3);
  const double h = 1e-4;
  double worst = 0.0, worst_h = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const ScalarField f = random_polynomial(R3, rng);
    const Point x = pt({u(rng), u(rng), u(rng)});
    const Jet2 j = f.eval(x);
    for (int i = 0; i < 3; ++i) {
      Point a = x, b = x;
      a(i) += h;
      b(i) -= h;
      const double fd = (f.value(a) - f.value(b)) / (2 * h);
      worst = std::max(worst, std::abs(fd - j.grad(i)) / std::max(1.0, std::abs(j.grad(i))));
      const Vec gd = (f.eval(a).grad - f.eval(b).grad) / (2 * h);
      for (int k = 0; k < 3; ++k) {
        worst_h = std::max(worst_h, std::abs(gd(k) - j.hess(k, i)) / std::max(1.0, std::abs(j.hess(k, i))));
      }
    }
  }
  CHECK(worst <= 1e-6);
  CHECK(worst_h <= 1e-6);
}

TEST_CASE("jet elementary functions match their derivatives") {
  const auto R1 = ModelManifold::make(0, 1);
  const double x0 = 0.7;
  const Jet2 x = Jet2::variable(x0, 0, 1);
  struct Case {
    Jet2 j;
    double f0, f1, f2;
  };
  const Case cases[] = {
      {exp(x), std::exp(x0), std::exp(x0), std::exp(x0)},
      {log(x), std::log(x0), 1 / x0, -1 / (x0 * x0)},
      {sqrt(x), std::sqrt(x0), 0.5 / std::sqrt(x0), -0.25 * std::pow(x0, -1.5)},
      {atan(x), std::atan(x0), 1 / (1 + x0 * x0), -2 * x0 / std::pow(1 + x0 * x0, 2)},
      {pow(x, 2.5), std::pow(x0, 2.5), 2.5 * std::pow(x0, 1.5), 3.75 * std::pow(x0, 0.5)},
      {1.0 / x, 1 / x0, -1 / (x0 * x0), 2 / (x0 * x0 * x0)},
      {pow(x, x), std::pow(x0, x0), std::pow(x0, x0) * (std::log(x0) + 1),
       std::pow(x0, x0) * (std::pow(std::log(x0) + 1, 2) + 1 / x0)},
  };
  for (const auto& c : cases) {
    CHECK(c.j.value == doctest::Approx(c.f0).epsilon(1e-13));
    CHECK(c.j.grad(0) == doctest::Approx(c.f1).epsilon(1e-13));
    CHECK(c.j.hess(0, 0) == doctest::Approx(c.f2).epsilon(1e-12));
  }
  CHECK_THROWS_AS(log(Jet2::variable(-1.0, 0, 1)), DomainError);
  CHECK_THROWS_AS(pow(Jet2::variable(-1.0, 0, 1), 0.5), DomainError);
  CHECK_NOTHROW(pow(Jet2::variable(-2.0, 0, 1), 3.0));
  (void)R1;
}

TEST_CASE("smootherstep is flat outside the unit interval") {
  for (double s : {-1.0, 0.0, 1.0, 2.0}) {
    const Jet2 j = smootherstep(Jet2::variable(s, 0, 1));
    CHECK(j.value == (s >= 1.0 ? 1.0 : 0.0));
    CHECK(j.grad(0) == 0.0);
    CHECK(j.hess(0, 0) == 0.0);
  }
  const Jet2 mid = smootherstep(Jet2::variable(0.5, 0, 1));
  CHECK(mid.value == doctest::Approx(0.5));
  CHECK(mid.grad(0) == doctest::Approx(30 * 0.0625));
}

TEST_CASE("domain errors carry the point") {
  const auto R1 = ModelManifold::make(0, 1);
  const ScalarField f = log(ScalarField::coordinate(R1, 0));
  try {
    f.value(pt({-2.0}));
    FAIL("expected a DomainError");
  } catch (const DomainError& e) {
    REQUIRE(e.point().size() == 1);
    CHECK(e.point()[0] == -2.0);
  }
}

TEST_CASE("fields see normalized circle coordinates") {
  const auto T1 = ModelManifold::make(1, 0);
  const ScalarField q = ScalarField::coordinate(T1, 0);
  CHECK(q.value(pt({2 * pi + 0.25})) == doctest::Approx(0.25));
}

TEST_CASE("radical inverse and Halton points") {
  CHECK(radical_inverse(1, 2) == 0.5);
  CHECK(radical_inverse(2, 2) == 0.25);
  CHECK(radical_inverse(3, 2) == 0.75);
  CHECK(radical_inverse(1, 3) == doctest::Approx(1.0 / 3));
  const auto M = ModelManifold::make(2, 0).cotangent();
  SampleOptions so;
  so.count = 500;
  so.line_radius = 2.0;
  const auto pts = halton_points(M, so);
  REQUIRE(pts.size() == 500);
  for (const auto& x : pts) {
    CHECK(x(0) >= 0.0);
    CHECK(x(0) < 2 * pi);
    CHECK(std::abs(x(2)) <= 2.0);
  }
  // Determinism and seed separation.
  CHECK(halton_points(M, so)[17] == pts[17]);
  so.seed = 1;
  CHECK(halton_points(M, so)[0] != pts[0]);
}

TEST_CASE("tensor grid nodes") {
  const auto M = ModelManifold::make(1, 1);
  const auto g = tensor_grid(M, 4, 1.0);
  REQUIRE(g.size() == 16);
  std::set<double> circle, line;
  for (const auto& x : g) {
    circle.insert(x(0));
    line.insert(x(1));
  }
  CHECK(circle.size() == 4);
  CHECK(*circle.rbegin() == doctest::Approx(1.5 * pi));
  CHECK(*line.begin() == -1.0);
  CHECK(*line.rbegin() == 1.0);
}

TEST_CASE("damped Newton, RK4 and Simpson against closed forms") {
  const SystemFn fn = [](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
    r.resize(2);
    J.resize(2, 2);
    r << x(0) * x(0) + x(1) * x(1) - 4, x(0) - x(1);
    J << 2 * x(0), 2 * x(1), 1, -1;
  };
  const auto res = damped_newton(fn, Eigen::Vector2d(3.0, 0.5));
  CHECK(res.converged);
  CHECK(res.x(0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(res.x(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const double y = rk4_scalar([](double, double v) { return -2 * v; }, 1.0, 0.0, 1.0, 200);
  CHECK(y == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
  CHECK(simpson([](double x) { return std::sin(x); }, 0.0, pi, 64) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(simpson([](double x) { return x * x * x; }, 0.0, 1.0, 2) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("parallel_for covers every index and rethrows the smallest failure") {
  set_thread_cap(4);
  std::vector<int> hit(1000, 0);
  parallel_for(1000, [&](long i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  try {
    parallel_for(1000, [](long i) {
      if (i % 97 == 13) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected a throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "13");
  }
  set_thread_cap(0);
}

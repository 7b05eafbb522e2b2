#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lcs/chords.hpp"
#include "lcs/error.hpp"

using namespace lcs;

namespace {

Point pt(std::initializer_list<double> v) {
  Point x(static_cast<int>(v.size()));
  int i = 0;
  for (double a : v) x(i++) = a;
  return x;
}

LiouvilleChord synthetic(double t) {
  LiouvilleChord c;
  c.start = pt({0.1});
  c.end = pt({0.2});
  c.t = t;
  c.length = std::log(t);
  c.sign = t > 1 ? 1 : -1;
  return c;
}

}  // namespace

TEST_CASE("chord classification by arithmetic") {
  const auto T1 = ModelManifold::make(1, 0);
  auto k = [&](double v) { return ScalarField::constant(T1, v); };

  SUBCASE("f values 1 and 2 at scale 3") {
    const auto c = classify_chord(synthetic(3.0), k(1.0), k(2.0));
    CHECK(c.defect == doctest::Approx(-1.0));
    CHECK_FALSE(c.essential);
    REQUIRE(c.mvt_ratio.has_value());
    CHECK(*c.mvt_ratio == doctest::Approx(std::log(2.0) / std::log(3.0)));
    CHECK(c.positive_values);
  }
  SUBCASE("translated torus chord: 1 to 3 at scale 3") {
    const auto c = classify_chord(synthetic(3.0), k(1.0), k(3.0));
    CHECK(c.defect == doctest::Approx(0.0));
    CHECK(c.essential);
    CHECK(*c.mvt_ratio == doctest::Approx(1.0));
  }
  SUBCASE("constant jets 1 to 2 at scale 2") {
    const auto c = classify_chord(synthetic(2.0), k(1.0), k(2.0));
    CHECK(c.defect == doctest::Approx(0.0));
    CHECK(c.essential);
  }
  SUBCASE("nonpositive values have no ratio") {
    const auto c = classify_chord(synthetic(2.0), k(-1.0), k(2.0));
    CHECK_FALSE(c.positive_values);
    CHECK_FALSE(c.mvt_ratio.has_value());
  }
}

TEST_CASE("a beta-graph has no self chords and is unobstructed") {
  const auto T2 = ModelManifold::make(2, 0);
  const auto s = make_cotangent_structure(T2, Form::dx(T2, 1));
  const auto g = beta_graph(2.0 + 0.5 * cos(ScalarField::coordinate(T2, 0)), s);
  const auto cert = solve_primitive(g, Point::Zero(2));
  REQUIRE(cert.valid);
  ChordOptions o;
  o.grid = 16;
  const auto scan = scan_chords(g, cert, o);
  CHECK(scan.chords.empty());
  MvtOptions mo;
  mo.chords = o;
  const auto rep = mvt_obstruction_report(g, cert, mo);
  CHECK_FALSE(rep.obstructed);
  CHECK_FALSE(rep.max_ratio.has_value());
  CHECK(rep.min_primitive == doctest::Approx(1.5).epsilon(1e-3));
}

TEST_CASE("MVT report needs a positive primitive") {
  const auto e = example_torus_1();
  const auto cert = solve_primitive(e, Point::Zero(2));
  CHECK_THROWS_AS(mvt_obstruction_report(e, cert), PreconditionError);
}

TEST_CASE("lifts of constant jets: t = 2 chords and the Reeb match") {
  const auto T1 = ModelManifold::make(1, 0);
  const auto j1 = jet_graph(ScalarField::constant(T1, 1.0)), j2 = jet_graph(ScalarField::constant(T1, 2.0));
  const auto S = ModelManifold::from_kinds({CoordKind::Circle}, {"theta"});
  const auto L1 = lift_legendrian(j1, Form::dx(S, 0)), L2 = lift_legendrian(j2, Form::dx(S, 0));
  const auto k1 = solve_primitive(L1, Point::Zero(2)), k2 = solve_primitive(L2, Point::Zero(2));
  ChordOptions o;
  o.grid = 16;
  const auto scan = scan_chords(L1, k1, L2, k2, o);
  REQUIRE_FALSE(scan.chords.empty());
  for (const auto& c : scan.chords) {
    CHECK(c.t == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(std::abs(c.defect) <= 1e-8);
    CHECK(c.essential);
  }
  CHECK(scan.family_count == 1);

  const std::string csv = chords_csv(scan);
  CHECK(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')) == scan.chords.size() + 1);

  const auto rr = reeb_correspondence({j1, j2});
  CHECK(rr.identities.evaluation_defect <= 1e-12);
  CHECK(rr.identities.contraction_defect <= 1e-12);
  CHECK(rr.reeb_families == 1);
  CHECK(rr.liouville_families == 1);
  CHECK(rr.one_to_one);
  CHECK(rr.all_essential);
  CHECK(rr.closed_form_defect <= 1e-8);
  for (const auto& r : rr.reeb) CHECK(r.time == doctest::Approx(std::log(2.0)).epsilon(1e-8));
  CHECK(rr.pass);

  const auto single = reeb_correspondence({j1});
  CHECK(single.reeb.empty());
  CHECK(single.liouville.empty());
}

TEST_CASE("Reeb correspondence refuses components touching s = 0") {
  const auto T1 = ModelManifold::make(1, 0);
  const auto j = jet_graph(sin(ScalarField::coordinate(T1, 0)));
  CHECK_THROWS_AS(reeb_correspondence({j}), PreconditionError);
}

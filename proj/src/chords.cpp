#include "lcs/chords.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "lcs/error.hpp"
#include "lcs/parallel.hpp"
#include "lcs/sampling.hpp"
#include "lcs/solvers.hpp"

namespace lcs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// A source mapped into a chart whose first n coordinates are base
// coordinates and the next m a fiber vector. Chords are pairs with equal base
// points and positively proportional fiber vectors.
struct Sheet {
  ModelManifold source;
  SmoothMap map;
};

struct Raw {
  Point u, v;
  Vec base, a, b;
  double t = 1.0;
};

struct Coincidences {
  std::vector<Raw> hits;
  std::vector<UnresolvedSeed> unresolved;
  long seeds = 0;
  long band = 0, orientation = 0, small = 0;
};

struct Sampled {
  std::vector<Point> params;
  std::vector<Vec> base, fiber;
  double base_step = 0.0;   // worst base displacement between grid neighbours
  double angle_step = 0.0;  // worst turn of the fiber direction
};

Vec unit(const Vec& v) { return v / v.norm(); }

Sampled sample_sheet(const Sheet& s, const ModelManifold& base, int n, int m, const ChordOptions& opt) {
  Sampled out;
  out.params = parameter_grid(s.source, opt.grid);
  const long N = static_cast<long>(out.params.size());
  const int k = s.source.dim();
  const double h = kTwoPi / opt.grid;
  out.base.resize(N);
  out.fiber.resize(N);
  std::vector<double> db(N, 0.0), da(N, 0.0);
  parallel_for(N, [&](long i) {
    auto split = [&](const Point& u, Vec& q, Vec& p) {
      const auto jets = s.map.eval(u);
      q.resize(n);
      p.resize(m);
      for (int j = 0; j < n; ++j) q(j) = jets[j].value;
      for (int j = 0; j < m; ++j) p(j) = jets[n + j].value;
      q = base.normalize(q);
    };
    split(out.params[i], out.base[i], out.fiber[i]);
    for (int j = 0; j < k; ++j) {
      Point w = out.params[i];
      w(j) += h;
      Vec q, p;
      split(w, q, p);
      db[i] = std::max(db[i], base.distance(out.base[i], q));
      if (out.fiber[i].norm() >= opt.min_fiber_norm && p.norm() >= opt.min_fiber_norm)
        da[i] = std::max(da[i], (unit(out.fiber[i]) - unit(p)).norm());
    }
  });
  for (long i = 0; i < N; ++i) {
    out.base_step = std::max(out.base_step, db[i]);
    out.angle_step = std::max(out.angle_step, da[i]);
  }
  return out;
}

// On a self-scan, seed pairs a few grid cells apart only find the diagonal
// (t = 1) and are skipped.
Coincidences find_coincidences(const Sheet& s1, const Sheet& s2, const ModelManifold& base, int m,
                               const ChordOptions& opt, bool self) {
  const int n = base.dim();
  const int k1 = s1.source.dim(), k2 = s2.source.dim();
  const Sampled g1 = sample_sheet(s1, base, n, m, opt);
  const Sampled g2 = sample_sheet(s2, base, n, m, opt);
  const double base_gate = g1.base_step + g2.base_step + 1e-12;
  const double angle_gate = std::min(g1.angle_step + g2.angle_step + 1e-3, 1.2);

  // Seed pairs: close base points, similar fiber directions.
  const long N1 = static_cast<long>(g1.params.size()), N2 = static_cast<long>(g2.params.size());
  std::vector<std::vector<long>> rows(N1);
  parallel_for(N1, [&](long i) {
    if (g1.fiber[i].norm() < opt.min_fiber_norm) return;
    const Vec ui = unit(g1.fiber[i]);
    for (long j = 0; j < N2; ++j) {
      if (self && s1.source.distance(g1.params[i], g2.params[j]) < 2.5 * kTwoPi / opt.grid) continue;
      if (g2.fiber[j].norm() < opt.min_fiber_norm) continue;
      if (base.distance(g1.base[i], g2.base[j]) > base_gate) continue;
      if ((ui - unit(g2.fiber[j])).norm() > angle_gate) continue;
      rows[i].push_back(j);
    }
  });
  std::vector<std::pair<long, long>> seeds;
  for (long i = 0; i < N1; ++i)
    for (long j : rows[i]) seeds.emplace_back(i, j);

  Coincidences out;
  out.seeds = static_cast<long>(seeds.size());
  const int wedges = m * (m - 1) / 2;
  auto system = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
    const auto j1 = s1.map.eval(Point(x.head(k1)));
    const auto j2 = s2.map.eval(Point(x.tail(k2)));
    r.resize(n + wedges);
    J.setZero(n + wedges, k1 + k2);
    for (int i = 0; i < n; ++i) {
      const double diff = j2[i].value - j1[i].value;
      r(i) = base.kind(i) == CoordKind::Circle ? wrap_angle(diff) : diff;
      J.block(i, 0, 1, k1) = -j1[i].grad.transpose();
      J.block(i, k1, 1, k2) = j2[i].grad.transpose();
    }
    int row = n;
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b, ++row) {
        const Jet2 &pa = j1[n + a], &pb = j1[n + b], &qa = j2[n + a], &qb = j2[n + b];
        r(row) = pa.value * qb.value - pb.value * qa.value;
        J.block(row, 0, 1, k1) = (qb.value * pa.grad - qa.value * pb.grad).transpose();
        J.block(row, k1, 1, k2) = (pa.value * qb.grad - pb.value * qa.grad).transpose();
      }
    }
  };

  enum Status { Hit, Unresolved, Band, Orientation, Small };
  struct Outcome {
    Status status;
    Raw raw;
    double residual = 0.0;
  };
  std::vector<Outcome> outcomes(seeds.size());
  parallel_for(static_cast<long>(seeds.size()), [&](long s) {
    Eigen::VectorXd x0(k1 + k2);
    x0.head(k1) = g1.params[seeds[s].first];
    x0.tail(k2) = g2.params[seeds[s].second];
    const NewtonResult nr = damped_newton(system, x0, {60, 1e-13, 1e-15});
    Outcome& o = outcomes[s];
    o.raw.u = s1.source.normalize(Point(nr.x.head(k1)));
    o.raw.v = s2.source.normalize(Point(nr.x.tail(k2)));
    o.residual = nr.residual;
    if (!nr.converged) {
      o.status = Unresolved;
      return;
    }
    const auto j1 = s1.map.eval(o.raw.u);
    const auto j2 = s2.map.eval(o.raw.v);
    Vec q(n), a(m), b(m);
    for (int i = 0; i < n; ++i) q(i) = j1[i].value;
    for (int i = 0; i < m; ++i) {
      a(i) = j1[n + i].value;
      b(i) = j2[n + i].value;
    }
    o.raw.base = base.normalize(q);
    o.raw.a = a;
    o.raw.b = b;
    if (a.norm() < opt.min_fiber_norm || b.norm() < opt.min_fiber_norm) {
      o.status = Small;
    } else if (a.dot(b) <= 0.0 || (unit(a) - unit(b)).norm() > opt.angle_tol) {
      o.status = Orientation;
    } else {
      o.raw.t = b.norm() / a.norm();
      o.status = std::abs(std::log(o.raw.t)) < opt.band ? Band : Hit;
    }
  });

  for (size_t s = 0; s < outcomes.size(); ++s) {
    const Outcome& o = outcomes[s];
    switch (o.status) {
      case Hit: {
        bool dup = false;
        for (const auto& h : out.hits) {
          if (s1.source.distance(h.u, o.raw.u) + s2.source.distance(h.v, o.raw.v) < opt.dedup) {
            dup = true;
            break;
          }
        }
        if (!dup) out.hits.push_back(o.raw);
        break;
      }
      case Unresolved:
        out.unresolved.push_back({g1.params[seeds[s].first], g2.params[seeds[s].second], o.residual});
        break;
      case Band: ++out.band; break;
      case Orientation: ++out.orientation; break;
      case Small: ++out.small; break;
    }
  }
  return out;
}

// Connected components of "both endpoints within the link radius"; returns a
// family id per item (-1 for singletons) and the family count.
template <class Near>
std::vector<int> families(long count, Near near, int& family_count) {
  std::vector<long> parent(count);
  std::iota(parent.begin(), parent.end(), 0L);
  auto find = [&](long x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (long i = 0; i < count; ++i)
    for (long j = i + 1; j < count; ++j)
      if (near(i, j)) parent[find(i)] = find(j);
  std::vector<long> size(count, 0);
  for (long i = 0; i < count; ++i) ++size[find(i)];
  std::vector<int> id(count, -1), root_id(count, -1);
  family_count = 0;
  for (long i = 0; i < count; ++i) {
    const long r = find(i);
    if (size[r] < 2) continue;
    if (root_id[r] < 0) root_id[r] = family_count++;
    id[i] = root_id[r];
  }
  return id;
}

double link_radius(const ChordOptions& opt) { return std::max(10.0 * opt.dedup, 1.5 * kTwoPi / opt.grid); }

void require_certificate(const ExactnessCertificate& c, const std::string& name) {
  if (!c.valid || !c.solved_primitive) {
    throw PreconditionError("embedding '" + name + "' has no valid exactness certificate", {}, c.residual_sup);
  }
}

}  // namespace

LiouvilleChord classify_chord(LiouvilleChord c, const ScalarField& f1, const ScalarField& f2, double tol) {
  c.f_start = f1.value(c.start);
  c.f_end = f2.value(c.end);
  c.length = std::log(c.t);
  c.sign = c.t > 1.0 ? 1 : -1;
  c.defect = c.f_end - c.t * c.f_start;
  c.essential = c.sign > 0 ? c.defect >= -tol : c.defect <= tol;
  c.positive_values = c.f_start > 0.0 && c.f_end > 0.0;
  if (c.positive_values) {
    c.mvt_ratio = (std::log(c.f_end) - std::log(c.f_start)) / c.length;
  } else {
    c.mvt_ratio.reset();
  }
  return c;
}

ChordScan scan_chords(const ParametricEmbedding& e1, const ExactnessCertificate& c1, const ParametricEmbedding& e2,
                      const ExactnessCertificate& c2, const ChordOptions& opt) {
  require_certificate(c1, e1.name);
  require_certificate(c2, e2.name);
  if (e1.target.base != e2.target.base) throw DimensionError("chord scan needs a common base");
  const ModelManifold& base = e1.target.base;
  const Coincidences co = find_coincidences({e1.source, e1.map}, {e2.source, e2.map}, base, base.dim(), opt, &e1 == &e2);

  ChordScan scan;
  scan.options = opt;
  scan.seeds = co.seeds;
  scan.unresolved = co.unresolved;
  scan.dropped_band = co.band;
  scan.dropped_orientation = co.orientation;
  scan.dropped_small = co.small;
  scan.link_radius = link_radius(opt);
  for (const Raw& r : co.hits) {
    LiouvilleChord c;
    c.start = r.u;
    c.end = r.v;
    c.base = r.base;
    c.start_fiber = r.a;
    c.end_fiber = r.b;
    c.t = r.t;
    scan.chords.push_back(classify_chord(c, *c1.solved_primitive, *c2.solved_primitive, opt.classify_tol));
  }
  const double link = scan.link_radius;
  const auto ids = families(
      static_cast<long>(scan.chords.size()),
      [&](long i, long j) {
        const auto &a = scan.chords[i], &b = scan.chords[j];
        return a.sign == b.sign && e1.source.distance(a.start, b.start) <= link &&
               e2.source.distance(a.end, b.end) <= link;
      },
      scan.family_count);
  std::vector<bool> seen(scan.family_count, false);
  for (size_t i = 0; i < scan.chords.size(); ++i) {
    scan.chords[i].family = ids[i];
    if (ids[i] < 0) {
      scan.representatives.push_back(static_cast<int>(i));
    } else if (!seen[ids[i]]) {
      seen[ids[i]] = true;
      scan.representatives.push_back(static_cast<int>(i));
    }
  }
  return scan;
}

ChordScan scan_chords(const ParametricEmbedding& e, const ExactnessCertificate& c, const ChordOptions& opt) {
  return scan_chords(e, c, e, c, opt);
}

MvtReport mvt_obstruction_report(const ParametricEmbedding& e, const ExactnessCertificate& c, const MvtOptions& opt) {
  require_certificate(c, e.name);
  const auto grid = parameter_grid(e.source, opt.positivity_grid);
  std::vector<double> fv(grid.size());
  parallel_for(static_cast<long>(grid.size()), [&](long i) { fv[i] = c.solved_primitive->value(grid[i]); });
  const auto it = std::min_element(fv.begin(), fv.end());
  MvtReport rep;
  rep.margin = opt.margin;
  rep.min_primitive = *it;
  if (rep.min_primitive <= 0.0) {
    const Point& at = grid[it - fv.begin()];
    std::ostringstream msg;
    msg << "primitive is not positive (minimum " << rep.min_primitive
        << "); translate by c*beta with c < " << rep.min_primitive << ", which turns f into f - c";
    throw PreconditionError(msg.str(), std::vector<double>(at.data(), at.data() + at.size()), rep.min_primitive);
  }
  rep.scan = scan_chords(e, c, opt.chords);
  for (size_t i = 0; i < rep.scan.chords.size(); ++i) {
    const auto& r = rep.scan.chords[i].mvt_ratio;
    if (!r) continue;
    if (!rep.max_ratio || *r > *rep.max_ratio) {
      rep.max_ratio = *r;
      rep.worst = static_cast<int>(i);
    }
    if (!rep.min_ratio || *r < *rep.min_ratio) rep.min_ratio = *r;
  }
  // Ratio exactly 1 counts as obstructed.
  rep.obstructed = rep.max_ratio && *rep.max_ratio >= 1.0 - opt.margin - opt.chords.classify_tol;
  return rep;
}

ReebIdentityReport reeb_identity_check(const ModelManifold& jet_space, int samples, double s_lo, double s_hi) {
  if (jet_space.bundle() != Bundle::Jet1) throw DimensionError("identity check needs a 1-jet space");
  const int n = jet_space.base_dim();
  const int zi = 2 * n;
  Form alpha = Form::dx(jet_space, zi);
  for (int i = 0; i < n; ++i) alpha = alpha - ScalarField::coordinate(jet_space, n + i) * Form::dx(jet_space, i);
  const Form alpha_s = (1.0 / ScalarField::coordinate(jet_space, zi)) * alpha;
  std::vector<ScalarField> comps;
  for (int i = 0; i < n; ++i) comps.push_back(ScalarField::constant(jet_space, 0.0));
  for (int i = 0; i <= n; ++i) comps.push_back(ScalarField::coordinate(jet_space, n + i));
  const VectorField R = VectorField::from_components(jet_space, comps);
  const Form evaluation = interior_product(R, alpha_s);
  const Form contraction = interior_product(R, d(alpha_s));

  auto pts = halton_points(jet_space, {samples, 4.0, 0});
  ReebIdentityReport rep;
  rep.samples = samples;
  std::vector<double> e1(pts.size()), e2(pts.size());
  parallel_for(static_cast<long>(pts.size()), [&](long s) {
    pts[s](zi) = s_lo + (s_hi - s_lo) * (pts[s](zi) + 4.0) / 8.0;
    e1[s] = std::abs(evaluation.eval(pts[s]).coeff[0].value - 1.0);
    e2[s] = contraction.eval(pts[s]).max_abs();
  });
  for (size_t s = 0; s < pts.size(); ++s) {
    rep.evaluation_defect = std::max(rep.evaluation_defect, e1[s]);
    rep.contraction_defect = std::max(rep.contraction_defect, e2[s]);
  }
  return rep;
}

ReebReport reeb_correspondence(const std::vector<LegendrianEmbedding>& components, const ReebOptions& opt) {
  if (components.empty()) throw DimensionError("no Legendrian components");
  const ModelManifold& J = components[0].jet_space;
  const ModelManifold M = J.base();
  const int n = M.dim();
  const int zi = 2 * n;
  for (const auto& l : components) {
    if (l.jet_space != J) throw DimensionError("components live in different jet spaces");
    for (const auto& u : parameter_grid(l.source, opt.chords.grid)) {
      const double s = l.map.eval(u)[zi].value;
      if (s < opt.epsilon) {
        throw PreconditionError("component '" + l.name + "' has s below epsilon",
                                std::vector<double>(u.data(), u.data() + u.size()), s);
      }
    }
  }

  ReebReport rep;
  rep.identities = reeb_identity_check(J, opt.identity_samples);
  const double link = link_radius(opt.chords);
  const int C = static_cast<int>(components.size());

  // Reeb chords: equal base point, (p, s) scaled by e^time > 1.
  for (int a = 0; a < C; ++a) {
    for (int b = 0; b < C; ++b) {
      const auto co = find_coincidences({components[a].source, components[a].map},
                                        {components[b].source, components[b].map}, M, n + 1, opt.chords, a == b);
      for (const Raw& r : co.hits) {
        if (r.t <= 1.0) continue;
        rep.reeb.push_back({a, b, r.u, r.v, std::log(r.t), -1});
      }
    }
  }
  const auto rid = families(
      static_cast<long>(rep.reeb.size()),
      [&](long i, long j) {
        const auto &x = rep.reeb[i], &y = rep.reeb[j];
        return x.from == y.from && x.to == y.to && components[x.from].source.distance(x.start, y.start) <= link &&
               components[x.to].source.distance(x.end, y.end) <= link;
      },
      rep.reeb_families);
  // Singletons count as their own family.
  std::vector<int> rgroup(rep.reeb.size());
  int next = rep.reeb_families;
  for (size_t i = 0; i < rep.reeb.size(); ++i) {
    rep.reeb[i].family = rid[i];
    rgroup[i] = rid[i] >= 0 ? rid[i] : next++;
  }
  rep.reeb_families = next;

  // Lifts along S^1 with d theta; their primitive is z.
  const ModelManifold circle = ModelManifold::from_kinds({CoordKind::Circle}, {"theta"});
  const Form dtheta = Form::dx(circle, 0);
  std::vector<ParametricEmbedding> lifts;
  std::vector<ExactnessCertificate> certs;
  for (const auto& l : components) {
    lifts.push_back(lift_legendrian(l, dtheta));
    PrimitiveOptions po;
    po.nodes_per_axis = 32;
    po.steps_per_loop = 512;
    certs.push_back(solve_primitive(lifts.back(), Point::Zero(lifts.back().source.dim()), po));
  }
  std::vector<int> lgroup;
  int lnext = 0;
  for (int a = 0; a < C; ++a) {
    for (int b = 0; b < C; ++b) {
      const ChordScan scan = scan_chords(lifts[a], certs[a], lifts[b], certs[b], opt.chords);
      std::vector<int> local(scan.family_count, -1);
      for (const auto& c : scan.chords) {
        if (c.sign < 0) continue;
        int g;
        if (c.family >= 0) {
          if (local[c.family] < 0) local[c.family] = lnext++;
          g = local[c.family];
        } else {
          g = lnext++;
        }
        rep.liouville.push_back(c);
        rep.liouville_pairs.emplace_back(a, b);
        lgroup.push_back(g);
      }
    }
  }
  rep.liouville_families = lnext;

  // Pointwise closed-form checks both ways.
  auto flow_defect = [&](int a, const Point& la, int b, const Point& lb, double scale) {
    const auto ja = components[a].map.eval(la);
    const auto jb = components[b].map.eval(lb);
    Vec qa(n), qb(n);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      qa(i) = ja[i].value;
      qb(i) = jb[i].value;
    }
    worst = M.distance(M.normalize(qa), M.normalize(qb));
    for (int i = n; i <= zi; ++i) worst = std::max(worst, std::abs(jb[i].value - scale * ja[i].value));
    return worst;
  };
  rep.all_essential = true;
  std::vector<int> l_to_r(lnext, -2);
  bool consistent = true;
  for (size_t i = 0; i < rep.liouville.size(); ++i) {
    const auto& c = rep.liouville[i];
    const auto [a, b] = rep.liouville_pairs[i];
    const int k = components[a].source.dim();
    const Point la = c.start.head(k), lb = c.end.head(components[b].source.dim());
    rep.closed_form_defect = std::max(rep.closed_form_defect, flow_defect(a, la, b, lb, c.t));
    rep.all_essential = rep.all_essential && c.essential;
    int best = -1;
    double best_d = 0.0;
    for (size_t r = 0; r < rep.reeb.size(); ++r) {
      const auto& rc = rep.reeb[r];
      if (rc.from != a || rc.to != b) continue;
      const double dd = components[a].source.distance(la, rc.start) + components[b].source.distance(lb, rc.end);
      if (best < 0 || dd < best_d) {
        best = static_cast<int>(r);
        best_d = dd;
      }
    }
    if (best < 0 || best_d > 2.0 * link) {
      consistent = false;
      continue;
    }
    int& slot = l_to_r[lgroup[i]];
    if (slot == -2) slot = rgroup[best];
    else if (slot != rgroup[best]) consistent = false;
  }
  for (const auto& rc : rep.reeb) {
    Point la(rc.start.size() + 1), lb(rc.end.size() + 1);
    la << rc.start, 0.0;
    lb << rc.end, 0.0;
    const auto ja = lifts[rc.from].map.eval(la);
    const auto jb = lifts[rc.to].map.eval(lb);
    const int nn = lifts[rc.from].target.base.dim();
    for (int i = 0; i < nn; ++i) {
      double diff = jb[i].value - ja[i].value;
      if (lifts[rc.from].target.base.kind(i) == CoordKind::Circle) diff = wrap_angle(diff);
      rep.closed_form_defect = std::max(rep.closed_form_defect, std::abs(diff));
      rep.closed_form_defect =
          std::max(rep.closed_form_defect, std::abs(jb[nn + i].value - std::exp(rc.time) * ja[nn + i].value));
    }
  }
  std::vector<int> hits(rep.reeb_families, 0);
  for (int g : l_to_r) {
    if (g < 0) consistent = false;
    else ++hits[g];
  }
  for (int h : hits) consistent = consistent && h == 1;
  rep.one_to_one = consistent && rep.reeb_families == rep.liouville_families;
  rep.pass = rep.identities.evaluation_defect <= 1e-12 && rep.identities.contraction_defect <= 1e-12 &&
             rep.one_to_one && rep.all_essential && rep.closed_form_defect <= 1e-8;
  return rep;
}

std::string chords_csv(const ChordScan& scan) {
  std::ostringstream out;
  out << std::setprecision(17);
  const int n = scan.chords.empty() ? 0 : static_cast<int>(scan.chords[0].base.size());
  for (int i = 0; i < n; ++i) out << "base_" << i << ',';
  for (int i = 0; i < n; ++i) out << "fiber_" << i << ',';
  out << "t,length,ratio,defect,essential,family\n";
  for (const auto& c : scan.chords) {
    for (int i = 0; i < n; ++i) out << c.base(i) << ',';
    for (int i = 0; i < n; ++i) out << c.start_fiber(i) << ',';
    out << c.t << ',' << c.length << ',';
    if (c.mvt_ratio) out << *c.mvt_ratio;
    out << ',' << c.defect << ',' << (c.essential ? 1 : 0) << ',' << c.family << '\n';
  }
  return out.str();
}

std::string chords_json(const ChordScan& scan) {
  using nlohmann::json;
  auto vec = [](const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  json chords = json::array();
  for (const auto& c : scan.chords) {
    chords.push_back({{"start", vec(c.start)},
                      {"end", vec(c.end)},
                      {"base", vec(c.base)},
                      {"start_fiber", vec(c.start_fiber)},
                      {"end_fiber", vec(c.end_fiber)},
                      {"t", c.t},
                      {"length", c.length},
                      {"ratio", c.mvt_ratio ? json(*c.mvt_ratio) : json(nullptr)},
                      {"defect", c.defect},
                      {"f_start", c.f_start},
                      {"f_end", c.f_end},
                      {"essential", c.essential},
                      {"family", c.family}});
  }
  json j = {{"chords", chords},
            {"representatives", scan.representatives},
            {"family_count", scan.family_count},
            {"seeds", scan.seeds},
            {"unresolved_seeds", scan.unresolved.size()},
            {"dropped_band", scan.dropped_band},
            {"dropped_orientation", scan.dropped_orientation},
            {"dropped_small", scan.dropped_small},
            {"min_fiber_norm", scan.options.min_fiber_norm},
            {"link_radius", scan.link_radius}};
  return j.dump(2);
}

}  // namespace lcs

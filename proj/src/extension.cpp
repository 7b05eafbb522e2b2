#include "lcs/extension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lcs/error.hpp"
#include "lcs/parallel.hpp"
#include "lcs/sampling.hpp"
#include "lcs/solvers.hpp"

namespace lcs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> as_std(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vec base_of(const std::vector<Jet2>& jets, int n) {
  Vec q(n);
  for (int i = 0; i < n; ++i) q(i) = jets[i].value;
  return q;
}

Vec fiber_of(const std::vector<Jet2>& jets, int n) {
  Vec p(n);
  for (int i = 0; i < n; ++i) p(i) = jets[n + i].value;
  return p;
}

}  // namespace

CoreSkeleton build_core(const ParametricEmbedding& e, const std::vector<Point>& base_points, int param_per_axis) {
  const ModelManifold& M = e.target.base;
  const int n = M.dim(), k = e.source.dim();
  const auto seeds = parameter_grid(e.source, param_per_axis);
  const double h = kTwoPi / param_per_axis;
  std::vector<Vec> images(seeds.size());
  std::vector<double> steps(seeds.size(), 0.0);
  parallel_for(static_cast<long>(seeds.size()), [&](long i) {
    images[i] = M.normalize(base_of(e.map.eval(seeds[i]), n));
    for (int j = 0; j < k; ++j) {
      Point w = seeds[i];
      w(j) += h;
      steps[i] = std::max(steps[i], M.distance(images[i], base_of(e.map.eval(w), n)));
    }
  });
  const double gate = *std::max_element(steps.begin(), steps.end()) + 1e-12;

  CoreSkeleton core;
  core.base = M;
  core.base_points = base_points;
  core.stars.resize(base_points.size());
  parallel_for(static_cast<long>(base_points.size()), [&](long b) {
    const Point& target = base_points[b];
    auto sys = [&](const Eigen::VectorXd& u, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
      const auto jets = e.map.eval(Point(u));
      r.resize(n);
      J.resize(n, k);
      for (int i = 0; i < n; ++i) {
        const double diff = jets[i].value - target(i);
        r(i) = M.kind(i) == CoordKind::Circle ? wrap_angle(diff) : diff;
        J.row(i) = jets[i].grad.transpose();
      }
    };
    std::vector<Branch>& star = core.stars[b];
    for (size_t s = 0; s < seeds.size(); ++s) {
      if (M.distance(images[s], target) > gate) continue;
      const NewtonResult nr = damped_newton(sys, seeds[s], {40, 1e-13, 1e-15});
      if (!nr.converged) continue;
      const Point u = e.source.normalize(Point(nr.x));
      bool dup = false;
      for (const auto& br : star) dup = dup || e.source.distance(br.param, u) < 1e-4;
      if (dup) continue;
      Branch br;
      br.param = u;
      br.covector = fiber_of(e.map.eval(u), n);
      br.length = br.covector.norm();
      star.push_back(br);
    }
  });
  for (const auto& star : core.stars) {
    core.max_branches = std::max(core.max_branches, static_cast<int>(star.size()));
    for (const auto& br : star) core.nonzero_branches += br.length > 1e-12;
  }
  return core;
}

void require_unobstructed(const ParametricEmbedding& e, const ExactnessCertificate& c, const ScalarField& h_on_l,
                          const ChordOptions& opt) {
  const ChordScan scan = scan_chords(e, c, opt);
  const LiouvilleChord* worst = nullptr;
  double worst_ratio = 0.0;
  for (const auto& raw : scan.chords) {
    const LiouvilleChord ch = classify_chord(raw, h_on_l, h_on_l, opt.classify_tol);
    if (!ch.mvt_ratio) {
      throw PreconditionError("h is not positive at a chord endpoint", as_std(ch.base), std::min(ch.f_start, ch.f_end));
    }
    if (!worst || *ch.mvt_ratio > worst_ratio) {
      worst = &raw;
      worst_ratio = *ch.mvt_ratio;
    }
  }
  if (worst && worst_ratio >= 1.0 - opt.classify_tol) {
    std::ostringstream msg;
    msg << "MVT-obstructed: chord with ratio " << worst_ratio << " and scale t = " << worst->t << " at base (";
    for (int i = 0; i < worst->base.size(); ++i) msg << (i ? ", " : "") << worst->base(i);
    msg << ")";
    throw PreconditionError(msg.str(), as_std(worst->base), worst_ratio);
  }
}

ZeroPatch near_zero_extension(const ScalarField& h, const ParametricEmbedding& e, const CoreSkeleton& core,
                              double blend_width) {
  const ModelManifold& M = e.target.base;
  const int n = M.dim();
  ZeroPatch z;
  z.blend_width = blend_width;
  const auto grid = parameter_grid(e.source, 64);
  std::vector<double> hv(grid.size());
  parallel_for(static_cast<long>(grid.size()), [&](long i) { hv[i] = h.value(e.map.apply(grid[i])); });
  z.max_h = *std::max_element(hv.begin(), hv.end());
  for (const auto& star : core.stars)
    for (const auto& br : star) z.max_h = std::max(z.max_h, h.value(e.map.apply(br.param)));
  if (z.max_h <= 0.0) throw PreconditionError("h is not positive on L", {}, z.max_h);

  const GenericityReport gen = genericity_check(e);
  z.degenerate = gen.degenerate_input;
  for (const auto& u : gen.intersections) z.intersections.push_back(M.normalize(base_of(e.map.eval(u), n)));

  const long B = static_cast<long>(core.base_points.size());
  z.values.resize(B);
  for (long b = 0; b < B; ++b) {
    const Point& q = core.base_points[b];
    Point x = Point::Zero(2 * n);
    x.head(n) = q;
    const double h0 = h.value(x);
    if (h0 <= 0.0) throw PreconditionError("h is not positive on the 0-section", as_std(q), h0);
    double w = 0.0;
    if (z.degenerate) {
      w = 1.0;
    } else {
      double dmin = std::numeric_limits<double>::infinity();
      for (const auto& p : z.intersections) dmin = std::min(dmin, M.distance(q, p));
      if (dmin < blend_width) {
        const double t = dmin / blend_width;
        w = 1.0 - 3.0 * t * t + 2.0 * t * t * t;
      }
    }
    z.values[b] = w * h0 + (1.0 - w) * z.max_h;
  }

  // Grid-scale C^1 check along each base axis.
  const int N = static_cast<int>(std::lround(std::pow(static_cast<double>(B), 1.0 / n)));
  z.step = kTwoPi / N;
  long stride = 1;
  for (int axis = n - 1; axis >= 0; --axis) {
    for (long b = 0; b < B; ++b) {
      const int idx = static_cast<int>((b / stride) % N);
      auto shift = [&](int delta) { return b + ((((idx + delta) % N) + N) % N - idx) * stride; };
      const double dq_next = (z.values[shift(1)] - z.values[b]) / z.step;
      const double dq_prev = (z.values[b] - z.values[shift(-1)]) / z.step;
      z.c1_jump = std::max(z.c1_jump, std::abs(dq_next - dq_prev));
    }
    stride *= N;
  }
  z.c1_ok = z.c1_jump <= 10.0 * z.step;
  return z;
}

double log_linear_slope(const RaySegment& s) { return std::log(s.v_out / s.v_in) / std::log(s.r_out / s.r_in); }

double radial_log_interpolation(RadialField& F, const std::vector<RaySegment>& segments, double tol) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& s : segments) {
    if (!(s.r_in > 0.0 && s.r_out > s.r_in && s.v_in > 0.0 && s.v_out > 0.0)) {
      throw PreconditionError("segment needs 0 < r_in < r_out and positive end values", {s.r_in, s.r_out},
                              std::min(s.v_in, s.v_out));
    }
    const double slope = log_linear_slope(s);
    if (slope >= 1.0 - tol) {
      std::ostringstream msg;
      msg << "log-slope " << slope << " >= 1 on ray (base " << s.b << ", direction " << s.d << ") between r = "
          << s.r_in << " and r = " << s.r_out;
      const Point q = F.base_point(s.b);
      throw PreconditionError(msg.str(), as_std(q), slope);
    }
    worst = std::max(worst, slope);
    for (int r = 0; r < F.radius_count(); ++r) {
      const double rho = F.radius(r);
      if (rho < s.r_in * (1.0 - 1e-12) || rho > s.r_out * (1.0 + 1e-12)) continue;
      F.at(s.b, s.d, r) = s.v_in * std::exp(slope * std::log(rho / s.r_in));
    }
  }
  return worst;
}

RadialField mollify(const RadialField& F, double kernel_steps) {
  if (kernel_steps < 2.0) throw PreconditionError("kernel radius must be at least 2 grid steps", {}, kernel_steps);
  const int k = F.base().dim();
  const int reach = static_cast<int>(std::floor(kernel_steps));
  // Offsets over (base axes..., radius).
  struct Offset {
    std::vector<int> db;
    int dr;
    double w;
  };
  std::vector<Offset> offsets;
  std::vector<int> cur(k + 1, -reach);
  while (true) {
    double r2 = 0.0;
    for (int c : cur) r2 += static_cast<double>(c) * c;
    const double x2 = r2 / (kernel_steps * kernel_steps);
    if (x2 < 1.0) {
      const double w = std::pow(1.0 - x2, 3);
      offsets.push_back({std::vector<int>(cur.begin(), cur.begin() + k), cur[k], w});
    }
    int j = 0;
    while (j <= k && ++cur[j] > reach) cur[j++] = -reach;
    if (j > k) break;
  }
  RadialField out = F;
  const int D = F.direction_count(), R = F.radius_count();
  parallel_for(static_cast<long>(F.base_count()), [&](long b) {
    std::vector<int> shifted(offsets.size());
    for (size_t o = 0; o < offsets.size(); ++o) {
      int bb = static_cast<int>(b);
      for (int a = 0; a < k; ++a) bb = F.base_neighbor(bb, a, offsets[o].db[a]);
      shifted[o] = bb;
    }
    for (int d = 0; d < D; ++d) {
      for (int r = 0; r < R; ++r) {
        double num = 0.0, den = 0.0;
        for (size_t o = 0; o < offsets.size(); ++o) {
          const int rr = r + offsets[o].dr;
          if (rr < 0 || rr >= R) continue;
          num += offsets[o].w * F.at(shifted[o], d, rr);
          den += offsets[o].w;
        }
        out.at(static_cast<int>(b), d, r) = num / den;
      }
    }
  });
  return out;
}

namespace {

// ln F at radius rho on one ray, linear in ln r between nodes.
double log_value_at(const RadialField& F, int b, int d, double rho) {
  const double x = std::log(rho / F.radius(0)) / F.log_step();
  const int R = F.radius_count();
  if (x <= 0.0) return std::log(F.at(b, d, 0));
  if (x >= R - 1) return std::log(F.at(b, d, R - 1));
  const int i = static_cast<int>(std::floor(x));
  const double t = x - i;
  return (1.0 - t) * std::log(F.at(b, d, i)) + t * std::log(F.at(b, d, i + 1));
}

}  // namespace

double minimal_outer_radius(const RadialField& F, double r_inner, double margin) {
  double worst = 0.0;
  for (int b = 0; b < F.base_count(); ++b)
    for (int d = 0; d < F.direction_count(); ++d) worst = std::max(worst, std::abs(log_value_at(F, b, d, r_inner)));
  return r_inner * std::exp(worst / (1.0 - margin));
}

RadialField outer_flatten(const RadialField& F, double r_inner, double r_outer, double margin) {
  if (!(r_outer > r_inner && r_inner > 0.0)) throw PreconditionError("need 0 < r_inner < r_outer", {r_inner}, r_outer);
  const double needed = minimal_outer_radius(F, r_inner, margin);
  if (needed > r_inner && !(r_outer > needed)) {
    std::ostringstream msg;
    msg << "r_outer = " << r_outer << " is too small; the taper needs r_outer > " << needed;
    throw PreconditionError(msg.str(), {r_inner, r_outer}, needed);
  }
  RadialField out = F;
  const double span = std::log(r_outer / r_inner);
  for (int b = 0; b < F.base_count(); ++b) {
    for (int d = 0; d < F.direction_count(); ++d) {
      const double l0 = log_value_at(F, b, d, r_inner);
      for (int r = 0; r < F.radius_count(); ++r) {
        const double rho = F.radius(r);
        if (rho <= r_inner) continue;
        out.at(b, d, r) = rho >= r_outer ? 1.0 : std::exp(l0 * std::log(r_outer / rho) / span);
      }
    }
  }
  return out;
}

RadialBoundReport verify_radial_bound(const RadialField& F, const RadialBoundChecks& checks) {
  RadialBoundReport rep;
  rep.max_slope = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < F.base_count(); ++b) {
    for (int d = 0; d < F.direction_count(); ++d) {
      for (int r = 0; r < F.radius_count(); ++r) {
        const double s = F.log_slope(b, d, r);
        if (s > rep.max_slope) {
          rep.max_slope = s;
          rep.worst_b = b;
          rep.worst_d = d;
          rep.worst_r = r;
        }
        if (checks.r_outer && F.radius(r) >= *checks.r_outer * (1.0 - 1e-12)) {
          rep.outer_max_deviation = std::max(rep.outer_max_deviation, std::abs(F.at(b, d, r) - 1.0));
        }
        if (checks.collar && checks.h && (*checks.collar)[F.index(b, d, r)]) {
          rep.collar_max_error =
              std::max(rep.collar_max_error, std::abs(F.at(b, d, r) - checks.h->value(F.point(b, d, r))));
        }
      }
    }
  }
  rep.worst = F.point(rep.worst_b, rep.worst_d, rep.worst_r);
  rep.bound_ok = rep.max_slope < 1.0;
  rep.outer_ok = rep.outer_max_deviation == 0.0;
  rep.collar_ok = rep.collar_max_error <= 1e-6;
  rep.pass = rep.bound_ok && rep.outer_ok && rep.collar_ok;
  return rep;
}

ExtensionResult build_extension(const ParametricEmbedding& e, const ExactnessCertificate& c, const ScalarField& h,
                                const ExtensionOptions& opt) {
  const ModelManifold& M = e.target.base;
  const int n = M.dim();
  const ScalarField h_on_l = compose(h, e.map);
  {
    const auto grid = parameter_grid(e.source, 64);
    for (const auto& u : grid) {
      const double v = h_on_l.value(u);
      if (v <= 0.0) throw PreconditionError("h is not positive on L", as_std(u), v);
    }
  }
  require_unobstructed(e, c, h_on_l, opt.chords);

  ExtensionResult res;
  RadialField F(M, opt.grid, 1.0);
  res.core = build_core(e, [&] {
    std::vector<Point> pts;
    for (int b = 0; b < F.base_count(); ++b) pts.push_back(F.base_point(b));
    return pts;
  }(), opt.param_per_axis);
  res.zero = near_zero_extension(h, e, res.core, opt.blend_width);
  res.collar.assign(F.values().size(), 0);

  const double w = std::exp(opt.collar_log_width);
  const int D = F.direction_count();
  auto at = [&](int b, int d, double rho) {
    Point x(2 * n);
    x.head(n) = F.base_point(b);
    x.tail(n) = rho * F.direction(d);
    return h.value(x);
  };

  // Collars per ray, merged.
  struct Ray {
    std::vector<std::pair<double, double>> collars;
    double zero_edge = 0.0;
  };
  std::vector<Ray> rays(F.ray_count());
  double last_edge = opt.zero_radius;
  for (int b = 0; b < F.base_count(); ++b) {
    std::vector<std::vector<double>> radii(D);
    for (const auto& br : res.core.stars[b]) {
      if (br.length <= 0.0) continue;
      int best = 0;
      double dot = -2.0;
      for (int d = 0; d < D; ++d) {
        const double v = F.direction(d).dot(br.covector) / br.length;
        if (v > dot) {
          dot = v;
          best = d;
        }
      }
      radii[best].push_back(br.length);
    }
    for (int d = 0; d < D; ++d) {
      Ray& ray = rays[static_cast<long>(b) * D + d];
      std::sort(radii[d].begin(), radii[d].end());
      for (double l : radii[d]) {
        const double lo = l / w, hi = l * w;
        if (!ray.collars.empty() && lo <= ray.collars.back().second) {
          ray.collars.back().second = hi;
        } else {
          ray.collars.emplace_back(lo, hi);
        }
      }
      ray.zero_edge = ray.collars.empty() ? opt.zero_radius : std::min(opt.zero_radius, ray.collars.front().first / w);
      if (!ray.collars.empty()) last_edge = std::max(last_edge, ray.collars.back().second);
    }
  }
  res.r_inner = last_edge * w;
  const double r_top = F.radius(F.radius_count() - 1);
  if (res.r_inner >= r_top) throw PreconditionError("L reaches beyond the radial grid", {}, last_edge);

  for (int b = 0; b < F.base_count(); ++b) {
    const double Z = res.zero.values[b];
    for (int d = 0; d < D; ++d) {
      const Ray& ray = rays[static_cast<long>(b) * D + d];
      for (int r = 0; r < F.radius_count(); ++r) {
        const double rho = F.radius(r);
        if (rho <= ray.zero_edge) F.at(b, d, r) = Z;
        for (const auto& [lo, hi] : ray.collars) {
          if (rho >= lo && rho <= hi) {
            F.at(b, d, r) = at(b, d, rho);
            res.collar[F.index(b, d, r)] = 1;
          }
        }
      }
      double r_prev = ray.zero_edge, v_prev = Z;
      for (const auto& [lo, hi] : ray.collars) {
        if (lo > r_prev) res.segments.push_back({b, d, r_prev, lo, v_prev, at(b, d, lo)});
        r_prev = hi;
        v_prev = at(b, d, hi);
      }
      res.segments.push_back({b, d, r_prev, r_top, v_prev, v_prev});
    }
  }
  radial_log_interpolation(F, res.segments, opt.chords.classify_tol);
  res.interpolated_max = verify_radial_bound(F).max_slope;

  RadialField G = mollify(F, opt.kernel_steps);
  res.mollified_max = verify_radial_bound(G).max_slope;
  for (size_t i = 0; i < G.values().size(); ++i)
    if (res.collar[i]) G.values()[i] = F.values()[i];

  res.r_outer = minimal_outer_radius(G, res.r_inner, opt.margin) * (1.0 + 1e-6);
  if (res.r_outer <= res.r_inner) res.r_outer = res.r_inner * std::exp(F.log_step());
  if (res.r_outer >= r_top) {
    throw PreconditionError("radial grid too short: the outer taper needs r_max > " + std::to_string(res.r_outer), {},
                            res.r_outer);
  }
  res.g = outer_flatten(G, res.r_inner, res.r_outer, opt.margin);
  RadialBoundChecks checks;
  checks.r_outer = res.r_outer;
  checks.collar = &res.collar;
  checks.h = h;
  res.report = verify_radial_bound(res.g, checks);
  return res;
}

ScalarField radial_field_function(const RadialField& F) {
  const ModelManifold tm = F.base().cotangent();
  const int n = F.base().dim();
  auto field = std::make_shared<const RadialField>(F);
  auto value = [field, n](const Point& x) -> double {
    const RadialField& G = *field;
    const double r = x.tail(n).norm();
    if (r >= G.radius(G.radius_count() - 1)) return 1.0;
    const double xr = std::max(0.0, std::log(std::max(r, G.radius(0)) / G.radius(0)) / G.log_step());
    // Axes: base (periodic), direction (periodic for n <= 2), radius (clamped).
    const int N = G.per_axis();
    std::vector<double> frac;
    std::vector<int> size;
    std::vector<bool> periodic;
    for (int i = 0; i < n; ++i) {
      frac.push_back(x(i) / (2.0 * std::numbers::pi) * N);
      size.push_back(N);
      periodic.push_back(true);
    }
    int nearest_dir = -1;
    if (n == 1) {
      nearest_dir = x(1) >= 0.0 ? 0 : 1;
    } else if (n == 2) {
      double a = std::atan2(x(3), x(2));
      if (a < 0) a += 2.0 * std::numbers::pi;
      frac.push_back(a / (2.0 * std::numbers::pi) * G.direction_count());
      size.push_back(G.direction_count());
      periodic.push_back(true);
    } else {
      const Vec p = x.tail(n) / std::max(r, 1e-300);
      double best = -2.0;
      for (int d = 0; d < G.direction_count(); ++d) {
        const double v = G.direction(d).dot(p);
        if (v > best) {
          best = v;
          nearest_dir = d;
        }
      }
    }
    frac.push_back(xr);
    size.push_back(G.radius_count());
    periodic.push_back(false);
    const int A = static_cast<int>(frac.size());
    std::vector<int> i0(A);
    std::vector<std::array<double, 4>> wts(A);
    for (int a = 0; a < A; ++a) {
      const double fl = std::floor(frac[a]);
      const double t = frac[a] - fl;
      i0[a] = static_cast<int>(fl);
      wts[a] = {0.5 * (-t + 2 * t * t - t * t * t), 0.5 * (2 - 5 * t * t + 3 * t * t * t),
                0.5 * (t + 4 * t * t - 3 * t * t * t), 0.5 * (-t * t + t * t * t)};
    }
    double sum = 0.0;
    std::vector<int> off(A, 0);
    while (true) {
      double w = 1.0;
      std::vector<int> idx(A);
      for (int a = 0; a < A; ++a) {
        int j = i0[a] - 1 + off[a];
        j = periodic[a] ? ((j % size[a]) + size[a]) % size[a] : std::clamp(j, 0, size[a] - 1);
        idx[a] = j;
        w *= wts[a][off[a]];
      }
      long b = 0;
      for (int i = 0; i < n; ++i) b = b * N + idx[i];
      const int d = n == 2 ? idx[n] : nearest_dir;
      sum += w * std::log(G.at(static_cast<int>(b), d, idx[A - 1]));
      int a = 0;
      while (a < A && ++off[a] > 3) off[a++] = 0;
      if (a == A) break;
    }
    return std::exp(sum);
  };
  return ScalarField(tm, [value, n](const Point& x) {
    const int m = 2 * n;
    Jet2 j = Jet2::constant(value(x), m);
    // Second derivatives stay zero: consumers only take d ln g.
    constexpr double h1 = 1e-5;
    for (int i = 0; i < m; ++i) {
      Point a = x, b = x;
      a(i) += h1;
      b(i) -= h1;
      j.grad(i) = (value(a) - value(b)) / (2 * h1);
    }
    return j;
  });
}

Eigen::MatrixXd CollarExtension::normal_frame(const Point& u) const {
  const int n = e.target.base.dim();
  const Eigen::MatrixXd T = e.map.jacobian(u);
  Eigen::MatrixXd JT(2 * n, T.cols());
  JT.topRows(n) = -T.bottomRows(n);
  JT.bottomRows(n) = T.topRows(n);
  const Eigen::MatrixXd P =
      Eigen::MatrixXd::Identity(2 * n, 2 * n) - T * (T.transpose() * T).ldlt().solve(T.transpose());
  const Eigen::MatrixXd N0 = P * JT;
  // Gram-Schmidt keeps the frame continuous in u.
  Eigen::MatrixXd N(2 * n, N0.cols());
  for (int j = 0; j < N0.cols(); ++j) {
    Eigen::VectorXd v = N0.col(j);
    for (int i = 0; i < j; ++i) v -= N.col(i).dot(v) * N.col(i);
    N.col(j) = v.normalized();
  }
  return N;
}

Point CollarExtension::point(const Point& u, const Vec& s) const {
  const auto jets = e.map.eval(u);
  Eigen::VectorXd x(jets.size());
  for (size_t i = 0; i < jets.size(); ++i) x(i) = jets[i].value;
  x += normal_frame(u) * Eigen::VectorXd(s);
  return Point(x);
}

double CollarExtension::value(const Point& u, const Vec& s) const {
  const int n = e.target.base.dim();
  const auto jets = e.map.eval(u);
  const Eigen::MatrixXd T = e.map.jacobian(u);
  Eigen::VectorXd Z = Eigen::VectorXd::Zero(2 * n);
  for (int i = 0; i < n; ++i) Z(n + i) = jets[n + i].value;
  const Eigen::VectorXd a = (T.transpose() * T).ldlt().solve(T.transpose() * Z);
  const Eigen::VectorXd XV = Z - T * a;
  const Jet2 fj = f.eval(u);
  const double fv = fj.value;
  const double xv2 = XV.squaredNorm();
  if (xv2 < 1e-24) return fv;
  const double dfxh = Eigen::VectorXd(fj.grad).dot(a);
  return fv - dfxh * XV.dot(normal_frame(u) * Eigen::VectorXd(s)) / std::sqrt(xv2);
}

CollarExtension near_lagrangian_extension(const ParametricEmbedding& e, const ExactnessCertificate& c, double width) {
  if (!c.solved_primitive) throw PreconditionError("no primitive for the collar extension", {}, 0.0);
  const auto grid = parameter_grid(e.source, 64);
  for (const auto& u : grid) {
    const double v = c.solved_primitive->value(u);
    if (v <= 0.0) {
      throw PreconditionError("primitive is not positive (" + std::to_string(v) +
                                  "); shift it first with translate_by_form(e, beta, c), c below its minimum",
                              as_std(u), v);
    }
  }
  return {e, *c.solved_primitive, width};
}

CollarReport collar_log_derivative(const CollarExtension& x, int per_axis, int offsets) {
  const int n = x.e.target.base.dim();
  const int k = x.e.source.dim();
  const auto us = parameter_grid(x.e.source, per_axis);
  std::vector<Vec> ss;
  {
    long total = 1;
    for (int i = 0; i < n; ++i) total *= offsets;
    for (long t = 0; t < total; ++t) {
      Vec s(n);
      long rest = t;
      for (int i = 0; i < n; ++i) {
        s(i) = offsets == 1 ? 0.0 : -x.width + 2.0 * x.width * (rest % offsets) / (offsets - 1);
        rest /= offsets;
      }
      ss.push_back(s);
    }
  }
  CollarReport rep;
  rep.samples = static_cast<int>(us.size() * ss.size());
  rep.min_normal_part = std::numeric_limits<double>::infinity();
  std::vector<double> sup(us.size(), 0.0), xv(us.size());
  std::vector<int> arg(us.size(), 0);
  parallel_for(static_cast<long>(us.size()), [&](long i) {
    const Point& u = us[i];
    {
      const auto jets = x.e.map.eval(u);
      const Eigen::MatrixXd T = x.e.map.jacobian(u);
      Eigen::VectorXd Z = Eigen::VectorXd::Zero(2 * n);
      for (int j = 0; j < n; ++j) Z(n + j) = jets[n + j].value;
      xv[i] = (Z - T * (T.transpose() * T).ldlt().solve(T.transpose() * Z)).norm();
    }
    constexpr double h = 1e-6;
    for (size_t j = 0; j < ss.size(); ++j) {
      // Chain rule through the tube coordinates (u, s).
      Eigen::MatrixXd D(2 * n, k + n);
      Eigen::VectorXd grad(k + n);
      for (int c = 0; c < k + n; ++c) {
        Point up = u, um = u;
        Vec sp = ss[j], sm = ss[j];
        if (c < k) {
          up(c) += h;
          um(c) -= h;
        } else {
          sp(c - k) += h;
          sm(c - k) -= h;
        }
        D.col(c) = (Eigen::VectorXd(x.point(up, sp)) - Eigen::VectorXd(x.point(um, sm))) / (2 * h);
        grad(c) = (x.value(up, sp) - x.value(um, sm)) / (2 * h);
      }
      const Point y = x.point(u, ss[j]);
      Eigen::VectorXd Z = Eigen::VectorXd::Zero(2 * n);
      Z.tail(n) = Eigen::VectorXd(y.tail(n));
      const Eigen::VectorXd w = D.colPivHouseholderQr().solve(Z);
      const double v = std::abs(grad.dot(w) / x.value(u, ss[j]));
      if (v > sup[i]) {
        sup[i] = v;
        arg[i] = static_cast<int>(j);
      }
    }
  });
  for (size_t i = 0; i < us.size(); ++i) {
    rep.min_normal_part = std::min(rep.min_normal_part, xv[i]);
    if (sup[i] >= rep.sup_log_derivative) {
      rep.sup_log_derivative = sup[i];
      rep.worst_u = us[i];
      rep.worst_s = ss[arg[i]];
    }
  }
  return rep;
}

}  // namespace lcs

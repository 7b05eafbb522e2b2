#include "lcs/moser.hpp"

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

std::vector<double> as_std(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

struct Factor {
  double g, dgz;
};

Factor factor_at(const MoserProblem& P, const Point& x) {
  const Jet2 j = P.g.eval(x);
  if (j.value <= 0.0) throw DomainError("conformal factor is not positive", as_std(x));
  return {j.value, radial_derivative(j, P.structure.total, x)};
}

double denominator(const Factor& f, double t) { return t / f.g + 1.0 - t - t * f.dgz / (f.g * f.g); }

}  // namespace

ScalarField constant_ball_factor(const ModelManifold& cotangent, double c, double r1, double r2) {
  if (!(c > 0.0 && r1 > 0.0 && r2 > r1)) throw PreconditionError("need c > 0 and 0 < r1 < r2", {r1, r2}, c);
  const int n = cotangent.base_dim();
  const double lc = std::log(c), a = std::log(r1), b = std::log(r2);
  return ScalarField(cotangent, [=](const Point& x) {
    const int m = static_cast<int>(x.size());
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) s2 += x(n + i) * x(n + i);
    if (s2 <= r1 * r1) return Jet2::constant(c, m);
    if (s2 >= r2 * r2) return Jet2::constant(1.0, m);
    Jet2 s = Jet2::constant(0.0, m);
    for (int i = 0; i < n; ++i) {
      const Jet2 p = Jet2::variable(x(n + i), n + i, m);
      s = s + p * p;
    }
    const Jet2 u = (0.5 * log(s) - a) / (b - a);
    return exp(lc * (1.0 - smootherstep(u)));
  });
}

double moser_denominator(const MoserProblem& P, double t, const Point& x) {
  return denominator(factor_at(P, x), t);
}

double moser_rate(const MoserProblem& P, double t, const Point& x) {
  const Factor f = factor_at(P, x);
  const double den = denominator(f, t);
  if (!(den > 0.0)) {
    std::ostringstream msg;
    msg << "Moser denominator g_t + dg_t(Z) = " << den << " at t = " << t << " (d ln g(Z) = " << f.dgz / f.g
        << ")";
    throw PreconditionError(msg.str(), as_std(x), den);
  }
  return (1.0 / f.g - 1.0) / den;
}

std::vector<Point> moser_grid(const MoserProblem& P, int per_axis) {
  return tensor_grid(P.structure.total, per_axis, 1.25 * P.radius);
}

VectorField moser_vector_field(const MoserProblem& P, double t, int grid_per_axis) {
  const auto grid = moser_grid(P, grid_per_axis);
  parallel_for(static_cast<long>(grid.size()), [&](long i) { moser_rate(P, t, grid[i]); });
  const int n = P.structure.base.dim();
  return VectorField(P.structure.total, [P, t, n](const Point& x) {
    const int m = 2 * n;
    const double a = moser_rate(P, t, x);
    Vec da(m);
    constexpr double h = 1e-6;
    for (int k = 0; k < m; ++k) {
      Point xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      da(k) = (moser_rate(P, t, xp) - moser_rate(P, t, xm)) / (2 * h);
    }
    std::vector<Jet2> out(m, Jet2::constant(0.0, m));
    for (int i = 0; i < n; ++i) {
      Jet2& c = out[n + i];
      c.value = a * x(n + i);
      c.grad = x(n + i) * da;
      c.grad(n + i) += a;
    }
    return out;
  });
}

MoserInvariantReport moser_invariants(const MoserProblem& P, const std::vector<Point>& samples) {
  MoserInvariantReport rep;
  rep.times = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<Factor> f(samples.size());
  parallel_for(static_cast<long>(samples.size()), [&](long i) { f[i] = factor_at(P, samples[i]); });
  rep.max_dlng_z = rep.max_dlninvg_z = -std::numeric_limits<double>::infinity();
  rep.min_denominator = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < samples.size(); ++i) {
    rep.max_dlng_z = std::max(rep.max_dlng_z, f[i].dgz / f[i].g);
    rep.max_dlninvg_z = std::max(rep.max_dlninvg_z, -f[i].dgz / f[i].g);
    for (double t : rep.times) {
      const double den = denominator(f[i], t);
      if (den < rep.min_denominator) {
        rep.min_denominator = den;
        rep.worst = samples[i];
        rep.worst_t = t;
      }
    }
  }
  // d lambda_t itself; its Pfaffian carries the denominator as a factor.
  const ScalarField inv = 1.0 / P.g;
  const double ref = pfaffian(d(P.structure.lambda).eval(samples.front()).matrix());
  rep.pfaffian_sign_constant = true;
  for (double t : rep.times) {
    const Form lt = (t * inv + (1.0 - t)) * P.structure.lambda;
    const auto nd = check_nondegenerate(d(lt), samples, 0.0);
    double mn = std::numeric_limits<double>::infinity();
    for (double pf : nd.pfaffian) {
      mn = std::min(mn, std::abs(pf));
      rep.pfaffian_sign_constant = rep.pfaffian_sign_constant && pf * ref > 0.0;
    }
    rep.min_abs_pfaffian.push_back(mn);
  }
  rep.denominator_ok = rep.min_denominator > 0.0;
  rep.inverse_bound_ok = rep.max_dlninvg_z < 1.0;
  rep.pass = rep.denominator_ok && rep.inverse_bound_ok && rep.pfaffian_sign_constant;
  return rep;
}

namespace {

// ln rho after integrating d(ln rho)/d tau = a(1 - tau, .) with a fixed step.
double integrate_log_radius(const MoserProblem& P, const Point& x, double s0, const Vec& v, double tau0,
                            double tau1, double step, FlowMethod method) {
  const int n = P.structure.base.dim();
  const int N = std::max(1, static_cast<int>(std::ceil((tau1 - tau0) / step - 1e-9)));
  const double h = (tau1 - tau0) / N;
  Point y = x;
  auto rate = [&](double tau, double s) {
    y.tail(n) = std::exp(s) * v;
    return moser_rate(P, 1.0 - tau, y);
  };
  double s = s0;
  for (int k = 0; k < N; ++k) {
    const double tau = tau0 + k * h;
    if (method == FlowMethod::Euler) {
      s += h * rate(tau, s);
      continue;
    }
    const double k1 = rate(tau, s);
    const double k2 = rate(tau + 0.5 * h, s + 0.5 * h * k1);
    const double k3 = rate(tau + 0.5 * h, s + 0.5 * h * k2);
    const double k4 = rate(tau + h, s + h * k3);
    s += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return s;
}

}  // namespace

Point flow_point(const MoserProblem& P, const Point& x, const FlowOptions& opt) {
  const int n = P.structure.base.dim();
  const double r = x.tail(n).norm();
  if (r == 0.0) return x;
  const Vec v = x.tail(n) / r;
  const double s = integrate_log_radius(P, x, std::log(r), v, opt.tau0, opt.tau1, opt.step, opt.method);
  Point out = x;
  out.tail(n) = std::exp(s) * v;
  return out;
}

FlowResult integrate_flow(const MoserProblem& P, const std::vector<Point>& seeds, const FlowOptions& opt) {
  const int n = P.structure.base.dim();
  FlowResult res;
  res.seeds = seeds;
  res.options = opt;
  res.images.resize(seeds.size());
  std::vector<double> err(seeds.size(), 0.0), used(seeds.size(), opt.step);
  const double order = opt.method == FlowMethod::Rk4 ? 15.0 : 1.0;
  parallel_for(static_cast<long>(seeds.size()), [&](long i) {
    const Point& x = seeds[i];
    const double r = x.tail(n).norm();
    if (r == 0.0) {
      res.images[i] = x;
      return;
    }
    const Vec v = x.tail(n) / r;
    double h = opt.step;
    for (int halving = 0; halving <= opt.max_halvings; ++halving, h *= 0.5) {
      const double s1 = integrate_log_radius(P, x, std::log(r), v, opt.tau0, opt.tau1, h, opt.method);
      double e = 0.0;
      if (opt.richardson) {
        const double s2 = integrate_log_radius(P, x, std::log(r), v, opt.tau0, opt.tau1, 0.5 * h, opt.method);
        e = std::abs(s1 - s2) / order;
      }
      if (std::isfinite(s1) && e <= opt.richardson_tol) {
        Point out = x;
        out.tail(n) = std::exp(s1) * v;
        res.images[i] = out;
        err[i] = e;
        used[i] = h;
        return;
      }
    }
    std::ostringstream msg;
    msg << "flow step collapsed after " << opt.max_halvings << " halvings at seed " << i;
    throw ConvergenceError(msg.str());
  });
  res.step = opt.step;
  for (size_t i = 0; i < seeds.size(); ++i) {
    const Vec dq = P.structure.base.displacement(seeds[i].head(n), res.images[i].head(n));
    res.max_fiber_drift = std::max(res.max_fiber_drift, dq.cwiseAbs().maxCoeff());
    res.max_displacement = std::max(res.max_displacement, (res.images[i] - seeds[i]).norm());
    res.richardson_error = std::max(res.richardson_error, err[i]);
    res.step = std::min(res.step, used[i]);
  }
  return res;
}

PullbackReport verify_conformal_pullback(const MoserProblem& P, const FlowResult& R,
                                         const std::vector<Point>& samples) {
  const int m = P.structure.total.dim();
  FlowOptions opt = R.options;
  opt.step = R.step > 0.0 ? R.step : opt.step;
  const Form target = d((1.0 / P.g) * P.structure.lambda);
  const Eigen::MatrixXd omega = d(P.structure.lambda).eval(Point::Zero(m)).matrix();
  PullbackReport rep;
  rep.samples = static_cast<int>(samples.size());
  std::vector<double> res(samples.size());
  parallel_for(static_cast<long>(samples.size()), [&](long i) {
    const Point& x = samples[i];
    Eigen::MatrixXd J(m, m);
    constexpr double h = 1e-5;
    for (int k = 0; k < m; ++k) {
      Point xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      J.col(k) = (Eigen::VectorXd(flow_point(P, xp, opt)) - Eigen::VectorXd(flow_point(P, xm, opt))) / (2 * h);
    }
    const Eigen::MatrixXd pulled = J.transpose() * omega * J;
    res[i] = (pulled - target.eval(x).matrix()).cwiseAbs().maxCoeff();
  });
  for (size_t i = 0; i < samples.size(); ++i) {
    if (res[i] >= rep.residual) {
      rep.residual = res[i];
      rep.worst = samples[i];
    }
  }
  rep.pass = rep.residual <= rep.threshold;
  return rep;
}

StraightenResult straighten_lagrangian(const ParametricEmbedding& e, const ExactnessCertificate& c,
                                       const ScalarField& g, const std::optional<Form>& eta_prime,
                                       const StraightenOptions& opt) {
  const MvtReport mvt = mvt_obstruction_report(e, c, opt.mvt);
  if (mvt.obstructed) {
    std::ostringstream msg;
    msg << "MVT-obstructed: max chord ratio " << mvt.max_ratio.value_or(0.0) << "; see the chord report";
    throw PreconditionError(msg.str(), {}, mvt.max_ratio.value_or(0.0));
  }
  const int n = e.target.base.dim();
  const int k = e.source.dim();
  MoserProblem P{e.target, g, opt.radius};

  StraightenResult out;
  const auto grid = moser_grid(P, opt.bound_grid);
  const RadialCriterionReport bound = criterion_radial_log_derivative(g, e.target, grid);
  out.radial_bound = bound.sup;
  if (!bound.pass) {
    throw PreconditionError("extension fails the radial bound: sup d ln g(Z) = " + std::to_string(bound.sup),
                            as_std(bound.argmax), bound.sup);
  }
  if (eta_prime && (eta_prime->degree() != 1 || eta_prime->domain() != e.target.base)) {
    throw DimensionError("eta' must be a 1-form on the base");
  }

  const CotangentLcsStructure flat = make_cotangent_structure(e.target.base);
  const SmoothMap src = e.map;
  const FlowOptions fo = opt.flow;
  auto build = [&](const std::optional<Form>& eta) {
    auto fiber = [src, P, fo, eta, n](const Point& u) {
      const auto jets = src.eval(u);
      Point x(2 * n);
      for (int i = 0; i < 2 * n; ++i) x(i) = jets[i].value;
      Vec p = flow_point(P, x, fo).tail(n);
      if (eta) {
        const FormValue ev = eta->eval(x.head(n));
        for (int i = 0; i < n; ++i) p(i) += ev.coeff[i].value;
      }
      return p;
    };
    // Base components keep their exact jets; fiber components get a central
    // difference gradient, which is all the pullback of lambda needs.
    SmoothMap image_map(
        e.source, flat.total,
        [src, fiber, n, k](const Point& u) {
          auto jets = src.eval(u);
          const Vec p = fiber(u);
          constexpr double h = 1e-5;
          Mat dp(n, k);
          for (int j = 0; j < k; ++j) {
            Point up = u, um = u;
            up(j) += h;
            um(j) -= h;
            dp.col(j) = (fiber(up) - fiber(um)) / (2 * h);
          }
          for (int i = 0; i < n; ++i) {
            Jet2 jp = Jet2::constant(p(i), k);
            jp.grad = dp.row(i).transpose();
            jets[n + i] = jp;
          }
          return jets;
        },
        1);
    return make_embedding(e.name + "-straightened", flat, image_map);
  };
  out.image = build(eta_prime);

  // lambda-periods over the source loops through 0, and base windings.
  constexpr int kLoopIntervals = 256;
  out.loop_periods = Vec::Zero(k);
  Mat winding = Mat::Zero(n, k);
  for (int j = 0; j < k; ++j) {
    if (e.source.kind(j) != CoordKind::Circle) continue;
    out.loop_periods(j) = simpson(
        [&](double s) {
          Point u = Point::Zero(k);
          u(j) = s;
          return pulled_forms(out.image, u).c(j);
        },
        0.0, 2.0 * std::numbers::pi, kLoopIntervals);
    Point prev = Point::Zero(k);
    Vec q_prev = src.apply(prev).head(n);
    for (int s = 1; s <= kLoopIntervals; ++s) {
      Point u = Point::Zero(k);
      u(j) = 2.0 * std::numbers::pi * s / kLoopIntervals;
      const Vec q = src.apply(u).head(n);
      winding.col(j) += e.target.base.displacement(q_prev, q);
      q_prev = q;
    }
  }
  winding /= 2.0 * std::numbers::pi;
  if (opt.auto_eta && !eta_prime) {
    const Eigen::VectorXd c =
        Eigen::MatrixXd(winding.transpose()).completeOrthogonalDecomposition().solve(
            Eigen::VectorXd(-out.loop_periods / (2.0 * std::numbers::pi)));
    std::vector<double> coeffs(c.data(), c.data() + c.size());
    out.eta_coefficients = Vec(c);
    out.image = build(constant_one_form(e.target.base, coeffs));
  }

  SampleOptions so;
  so.count = opt.check_samples;
  const LagrangianReport lag = verify_lagrangian(out.image, halton_points(e.source, so), opt.closed_tol);
  out.closedness_residual = lag.residual_sup;
  out.certificate = solve_primitive(out.image, Point::Zero(k), opt.primitive);
  for (double hd : out.certificate.holonomy_defects) out.holonomy = std::max(out.holonomy, std::abs(hd));
  out.pass = out.closedness_residual <= opt.closed_tol && out.holonomy <= opt.holonomy_tol;
  return out;
}

DegreeReport projection_degree(const ParametricEmbedding& e, int seeds_per_axis) {
  const ModelManifold& M = e.target.base;
  const int n = M.dim(), k = e.source.dim();
  if (k != n) throw DimensionError("projection degree needs dim L = dim M");
  if (M.line_count() > 0) throw PreconditionError("projection degree needs a compact base", {}, M.line_count());
  const auto seeds = parameter_grid(e.source, seeds_per_axis);
  SampleOptions so;
  so.count = 100;
  const auto values = halton_points(M, so);
  DegreeReport rep;
  for (const Point& y : values) {
    ++rep.attempts;
    auto sys = [&](const Eigen::VectorXd& u, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
      const auto jets = e.map.eval(Point(u));
      r.resize(n);
      J.resize(n, k);
      for (int i = 0; i < n; ++i) {
        const double diff = jets[i].value - y(i);
        r(i) = M.kind(i) == CoordKind::Circle ? wrap_angle(diff) : diff;
        J.row(i) = jets[i].grad.transpose();
      }
    };
    std::vector<Point> found(seeds.size());
    std::vector<uint8_t> ok(seeds.size(), 0);
    parallel_for(static_cast<long>(seeds.size()), [&](long s) {
      const NewtonResult nr = damped_newton(sys, seeds[s], {40, 1e-13, 1e-15});
      if (nr.converged) {
        found[s] = e.source.normalize(Point(nr.x));
        ok[s] = 1;
      }
    });
    std::vector<Point> pre;
    for (size_t s = 0; s < seeds.size(); ++s) {
      if (!ok[s]) continue;
      bool dup = false;
      for (const auto& p : pre) dup = dup || e.source.distance(p, found[s]) < 1e-4;
      if (!dup) pre.push_back(found[s]);
    }
    bool regular = true;
    std::vector<int> signs;
    for (const auto& u : pre) {
      const double det = e.map.jacobian(u).topRows(n).determinant();
      if (std::abs(det) <= 1e-6) regular = false;
      signs.push_back(det > 0 ? 1 : -1);
    }
    if (!regular) continue;
    rep.regular_value = y;
    rep.preimages = pre;
    rep.signs = signs;
    for (int s : signs) rep.degree += s;
    return rep;
  }
  throw ConvergenceError("no regular value of the projection found in 100 attempts");
}

std::string flow_csv(const FlowResult& r) {
  std::ostringstream os;
  os.precision(17);
  if (r.seeds.empty()) return "";
  const int m = static_cast<int>(r.seeds.front().size());
  for (int i = 0; i < m; ++i) os << "x" << i << ",";
  for (int i = 0; i < m; ++i) os << "y" << i << (i + 1 < m ? "," : "\n");
  for (size_t s = 0; s < r.seeds.size(); ++s) {
    for (int i = 0; i < m; ++i) os << r.seeds[s](i) << ",";
    for (int i = 0; i < m; ++i) os << r.images[s](i) << (i + 1 < m ? "," : "\n");
  }
  return os.str();
}

}  // namespace lcs

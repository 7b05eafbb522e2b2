#include <cmath>
#include <numbers>

#include "lcs/error.hpp"
#include "lcs/lagrangian.hpp"
#include "lcs/parallel.hpp"
#include "lcs/sampling.hpp"
#include "lcs/solvers.hpp"

namespace lcs {

double quadratic_at_infinity_defect(const ScalarField& F, int base_dim, const GeneratingOptions& opt) {
  const ModelManifold& dom = F.domain();
  const int k = dom.dim() - base_dim;
  if (k < 1) throw DimensionError("generating function needs at least one fiber variable");
  // Base coordinates, then a radius in [R, 2R], then k - 1 angles for the
  // direction (a sign when k = 1).
  const int box = base_dim + k;
  Vec lo(box), hi(box);
  for (int i = 0; i < base_dim; ++i) {
    lo(i) = dom.kind(i) == CoordKind::Circle ? 0.0 : -4.0;
    hi(i) = dom.kind(i) == CoordKind::Circle ? 2.0 * std::numbers::pi : 4.0;
  }
  lo(base_dim) = opt.compact_radius;
  hi(base_dim) = 2.0 * opt.compact_radius;
  for (int i = base_dim + 1; i < box; ++i) {
    lo(i) = -1.0;
    hi(i) = 1.0;
  }
  const auto raw = halton_box(lo, hi, opt.shell_samples, 0);
  std::vector<Point> pts(raw.size());
  for (size_t s = 0; s < raw.size(); ++s) {
    Point x(dom.dim());
    x.head(base_dim) = raw[s].head(base_dim);
    Vec dir(k);
    if (k == 1) {
      dir(0) = (s % 2) ? -1.0 : 1.0;
    } else {
      // Cube point pushed to the sphere; enough spread for a shell test.
      dir = raw[s].segment(base_dim + 1, k - 1).homogeneous();
      dir(k - 1) = (s % 2) ? -1.0 : 1.0;
      dir.normalize();
    }
    x.tail(k) = raw[s](base_dim) * dir;
    pts[s] = x;
  }
  std::vector<Mat> hs(pts.size());
  parallel_for(static_cast<long>(pts.size()),
               [&](long s) { hs[s] = F.eval(pts[s]).hess.bottomRightCorner(k, k); });
  double worst = 0.0;
  for (const auto& h : hs) worst = std::max(worst, (h - hs[0]).cwiseAbs().maxCoeff());
  return worst;
}

ScalarField lift_generating_function(const ScalarField& F, int base_dim, const GeneratingOptions& opt) {
  const ModelManifold& dom = F.domain();
  const int k = dom.dim() - base_dim;
  if (k < 1 || base_dim < 1) throw DimensionError("generating function needs base and fiber variables");
  if (opt.require_quadratic) {
    const double defect = quadratic_at_infinity_defect(F, base_dim, opt);
    if (defect > opt.tol) {
      throw ValidationError("generating function is not quadratic at infinity: Hessian drift " +
                                std::to_string(defect),
                            {}, defect);
    }
  }
  std::vector<CoordKind> kinds(dom.kinds().begin(), dom.kinds().begin() + base_dim);
  std::vector<std::string> labels(dom.labels().begin(), dom.labels().begin() + base_dim);
  kinds.push_back(CoordKind::Circle);
  labels.push_back("theta");
  for (int i = base_dim; i < dom.dim(); ++i) {
    kinds.push_back(dom.kind(i));
    labels.push_back(dom.label(i));
  }
  const ModelManifold lifted = ModelManifold::from_kinds(kinds, labels);
  const int N = lifted.dim();
  return ScalarField(lifted, [F, base_dim, k, N](const Point& x) {
    Point y(base_dim + k);
    y.head(base_dim) = x.head(base_dim);
    y.tail(k) = x.tail(k);
    const Jet2 j = F.eval(y);
    Jet2 r = Jet2::constant(j.value, N);
    // Insert a zero row and column for theta.
    r.grad.head(base_dim) = j.grad.head(base_dim);
    r.grad.tail(k) = j.grad.tail(k);
    r.hess.topLeftCorner(base_dim, base_dim) = j.hess.topLeftCorner(base_dim, base_dim);
    r.hess.topRightCorner(base_dim, k) = j.hess.topRightCorner(base_dim, k);
    r.hess.bottomLeftCorner(k, base_dim) = j.hess.bottomLeftCorner(k, base_dim);
    r.hess.bottomRightCorner(k, k) = j.hess.bottomRightCorner(k, k);
    return r;
  });
}

std::vector<GeneratedPoint> fiber_critical_points(const ScalarField& G, int base_dim, const Point& x, const Vec& beta,
                                                  double xi_radius, int seeds_per_axis) {
  const ModelManifold& dom = G.domain();
  const int k = dom.dim() - base_dim;
  if (k < 1) throw DimensionError("no fiber variables");
  long total = 1;
  for (int i = 0; i < k; ++i) total *= seeds_per_axis;
  std::vector<std::optional<Eigen::VectorXd>> found(total);
  auto full = [&](const Eigen::VectorXd& xi) {
    Point y(dom.dim());
    y.head(base_dim) = x;
    y.tail(k) = xi;
    return y;
  };
  parallel_for(total, [&](long s) {
    Eigen::VectorXd xi(k);
    long rest = s;
    for (int i = 0; i < k; ++i) {
      const int c = static_cast<int>(rest % seeds_per_axis);
      rest /= seeds_per_axis;
      xi(i) = -xi_radius + 2.0 * xi_radius * (c + 0.5) / seeds_per_axis;
    }
    auto sys = [&](const Eigen::VectorXd& v, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
      const Jet2 j = G.eval(full(v));
      r = j.grad.tail(k);
      J = j.hess.bottomRightCorner(k, k);
    };
    const NewtonResult nr = damped_newton(sys, xi, {60, 1e-12, 1e-15});
    if (nr.converged && nr.x.cwiseAbs().maxCoeff() <= 1.5 * xi_radius) found[s] = nr.x;
  });
  std::vector<GeneratedPoint> out;
  for (const auto& f : found) {
    if (!f) continue;
    bool dup = false;
    for (const auto& g : out) dup = dup || (g.xi - *f).norm() < 1e-4;
    if (dup) continue;
    const Jet2 j = G.eval(full(*f));
    GeneratedPoint gp;
    gp.x = x;
    gp.xi = *f;
    gp.value = j.value;
    gp.p = j.grad.head(base_dim) - j.value * beta;
    out.push_back(gp);
  }
  std::sort(out.begin(), out.end(), [](const GeneratedPoint& a, const GeneratedPoint& b) { return a.xi(0) < b.xi(0); });
  return out;
}

}  // namespace lcs

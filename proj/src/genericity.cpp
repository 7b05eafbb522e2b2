#include <cmath>
#include <limits>

#include "lcs/lagrangian.hpp"
#include "lcs/parallel.hpp"
#include "lcs/solvers.hpp"

namespace lcs {

namespace {

double base_det(const ParametricEmbedding& e, const Point& u) {
  const int n = e.target.base.dim();
  const Eigen::MatrixXd J = e.map.jacobian(u);
  return J.topRows(n).determinant();
}

Eigen::VectorXd base_det_grad(const ParametricEmbedding& e, const Point& u) {
  constexpr double h = 1e-6;
  const int k = e.source.dim();
  Eigen::VectorXd g(k);
  for (int i = 0; i < k; ++i) {
    Point a = u, b = u;
    a(i) += h;
    b(i) -= h;
    g(i) = (base_det(e, a) - base_det(e, b)) / (2.0 * h);
  }
  return g;
}

void dedup_push(const ModelManifold& m, std::vector<Point>& out, const Point& p, double radius) {
  for (const auto& q : out)
    if (m.distance(p, q) < radius) return;
  out.push_back(p);
}

}  // namespace

GenericityReport genericity_check(const ParametricEmbedding& e, int seeds_per_axis, double tol) {
  const int n = e.target.base.dim();
  const auto seeds = parameter_grid(e.source, seeds_per_axis);
  GenericityReport rep;

  // (1) intersections with the 0-section: p(u) = 0.
  std::vector<int> vanishing(seeds.size(), 0);
  std::vector<std::optional<Point>> hits(seeds.size());
  parallel_for(static_cast<long>(seeds.size()), [&](long s) {
    auto sys = [&](const Eigen::VectorXd& u, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
      const auto jets = e.map.eval(Point(u));
      r.resize(n);
      J.resize(n, u.size());
      for (int i = 0; i < n; ++i) {
        r(i) = jets[n + i].value;
        J.row(i) = jets[n + i].grad.transpose();
      }
    };
    Eigen::VectorXd r;
    Eigen::MatrixXd J;
    sys(seeds[s], r, J);
    vanishing[s] = r.cwiseAbs().maxCoeff() <= tol;
    const NewtonResult nr = damped_newton(sys, seeds[s], {40, 1e-12, 1e-15});
    if (nr.converged) hits[s] = e.source.normalize(Point(nr.x));
  });
  long vanish = 0;
  for (int v : vanishing) vanish += v;
  rep.degenerate_input = vanish * 2 > static_cast<long>(seeds.size());
  rep.min_transversality = std::numeric_limits<double>::infinity();
  if (!rep.degenerate_input) {
    for (const auto& h : hits)
      if (h) dedup_push(e.source, rep.intersections, *h, 1e-4);
    for (const auto& u : rep.intersections) {
      const Eigen::MatrixXd J = e.map.jacobian(u);
      const Eigen::MatrixXd Q = J.householderQr().householderQ() * Eigen::MatrixXd::Identity(J.rows(), J.cols());
      const double sig = Eigen::JacobiSVD<Eigen::MatrixXd>(Q.bottomRows(n)).singularValues().minCoeff();
      rep.min_transversality = std::min(rep.min_transversality, sig);
    }
  } else {
    rep.min_transversality = 0.0;
  }
  rep.transverse = !rep.degenerate_input && rep.min_transversality > 1e-6;

  // (2) vertical tangencies: det(dq/du) = 0.
  std::vector<std::optional<Point>> tang(seeds.size());
  parallel_for(static_cast<long>(seeds.size()), [&](long s) {
    auto sys = [&](const Eigen::VectorXd& u, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
      r.resize(1);
      r(0) = base_det(e, Point(u));
      J = base_det_grad(e, Point(u)).transpose();
    };
    const NewtonResult nr = damped_newton(sys, seeds[s], {40, 1e-12, 1e-15});
    if (nr.converged) tang[s] = e.source.normalize(Point(nr.x));
  });
  for (const auto& t : tang)
    if (t) dedup_push(e.source, rep.vertical_tangencies, *t, 1e-4);
  rep.tangency_margin = std::numeric_limits<double>::infinity();
  rep.min_distance_to_zero = std::numeric_limits<double>::infinity();
  for (const auto& u : rep.vertical_tangencies) {
    rep.tangency_margin = std::min(rep.tangency_margin, base_det_grad(e, u).norm());
    const auto jets = e.map.eval(u);
    double pn = 0.0;
    for (int i = 0; i < n; ++i) pn += jets[n + i].value * jets[n + i].value;
    rep.min_distance_to_zero = std::min(rep.min_distance_to_zero, std::sqrt(pn));
  }
  return rep;
}

}  // namespace lcs

#include "lcs/solvers.hpp"

#include <cmath>

namespace lcs {

NewtonResult damped_newton(const SystemFn& fn, Eigen::VectorXd x0, const NewtonOptions& opt) {
  NewtonResult res;
  res.x = std::move(x0);
  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  fn(res.x, r, J);
  double norm = r.norm();
  for (res.iterations = 0; res.iterations < opt.max_iter; ++res.iterations) {
    if (norm <= opt.tol) break;
    Eigen::VectorXd dx = J.completeOrthogonalDecomposition().solve(-r);
    if (!dx.allFinite()) break;
    double step = 1.0;
    bool improved = false;
    Eigen::VectorXd rt;
    Eigen::MatrixXd Jt;
    while (step * dx.norm() > opt.min_step) {
      Eigen::VectorXd xt = res.x + step * dx;
      fn(xt, rt, Jt);
      if (rt.allFinite() && rt.norm() < norm) {
        res.x = xt;
        r = rt;
        J = Jt;
        norm = rt.norm();
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  res.residual = norm;
  res.converged = norm <= opt.tol;
  return res;
}

double rk4_scalar(const std::function<double(double, double)>& f, double y0, double t0, double t1, int steps) {
  const double h = (t1 - t0) / steps;
  double y = y0;
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * h;
    const double k1 = f(t, y);
    const double k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = f(t + h, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int k = 1; k < intervals; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

}  // namespace lcs

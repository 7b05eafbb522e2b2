#pragma once

#include <functional>

#include <Eigen/Dense>

namespace lcs {

/// Residual and Jacobian of a square or underdetermined system at x.
using SystemFn = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd& J)>;

struct NewtonOptions {
  int max_iter = 60;
  double tol = 1e-12;
  double min_step = 1e-14;
};

struct NewtonResult {
  Eigen::VectorXd x;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Damped Gauss-Newton. Each step is the minimum-norm least-squares solution
/// of J dx = -r, halved until the residual norm decreases.
NewtonResult damped_newton(const SystemFn& fn, Eigen::VectorXd x0, const NewtonOptions& opt = {});

/// Classical RK4 for a scalar ODE y' = f(t, y) over [t0, t1] in `steps`
/// equal steps.
double rk4_scalar(const std::function<double(double, double)>& f, double y0, double t0, double t1, int steps);

/// Composite Simpson rule over [a, b] with an even number of intervals.
double simpson(const std::function<double(double)>& f, double a, double b, int intervals);

}  // namespace lcs

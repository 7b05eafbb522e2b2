#include "lcs/reference.hpp"

#include <cmath>

#include "lcs/solvers.hpp"

namespace lcs::reference {

double lagrangian_residual(const ParametricEmbedding& e, const std::vector<Point>& samples) {
  double sup = 0.0;
  for (const Point& u : samples) {
    const PulledForms pf = pulled_forms(e, u);
    const int k = static_cast<int>(pf.c.size());
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        const double dl = pf.dc(j, i) - pf.dc(i, j);
        const double bl = pf.b(i) * pf.c(j) - pf.b(j) * pf.c(i);
        sup = std::max(sup, std::abs(dl - bl));
      }
    }
  }
  return sup;
}

RadialField mollify(const RadialField& F, double kernel_steps) {
  RadialField out = F;
  const int k = F.base().dim();
  const int N = F.per_axis(), D = F.direction_count(), R = F.radius_count();
  const int reach = static_cast<int>(kernel_steps);
  long combos = 1;
  for (int a = 0; a <= k; ++a) combos *= 2 * reach + 1;
  for (int b = 0; b < F.base_count(); ++b) {
    std::vector<int> idx(k);
    for (int a = k - 1, rest = b; a >= 0; --a, rest /= N) idx[a] = rest % N;
    for (int d = 0; d < D; ++d) {
      for (int r = 0; r < R; ++r) {
        double num = 0.0, den = 0.0;
        for (long c = 0; c < combos; ++c) {
          long rest = c;
          double dist2 = 0.0;
          int nb = 0;
          for (int a = 0; a < k; ++a) {
            const int off = static_cast<int>(rest % (2 * reach + 1)) - reach;
            rest /= 2 * reach + 1;
            dist2 += off * off;
            nb = nb * N + ((idx[a] + off) % N + N) % N;
          }
          const int dr = static_cast<int>(rest) - reach;
          dist2 += dr * dr;
          const double x2 = dist2 / (kernel_steps * kernel_steps);
          if (x2 >= 1.0 || r + dr < 0 || r + dr >= R) continue;
          const double w = (1.0 - x2) * (1.0 - x2) * (1.0 - x2);
          num += w * F.at(nb, d, r + dr);
          den += w;
        }
        out.at(b, d, r) = num / den;
      }
    }
  }
  return out;
}

double max_log_slope(const RadialField& F) {
  double best = -INFINITY;
  const int R = F.radius_count();
  const double h = F.log_step();
  for (int b = 0; b < F.base_count(); ++b) {
    for (int d = 0; d < F.direction_count(); ++d) {
      for (int r = 0; r < R; ++r) {
        const int lo = r == 0 ? 0 : r - 1, hi = r == R - 1 ? R - 1 : r + 1;
        const double s = (std::log(F.at(b, d, hi)) - std::log(F.at(b, d, lo))) / ((hi - lo) * h);
        best = std::max(best, s);
      }
    }
  }
  return best;
}

std::vector<Point> flow(const MoserProblem& P, const std::vector<Point>& seeds, double step) {
  const int n = P.structure.base.dim();
  std::vector<Point> out;
  for (const Point& x : seeds) {
    const double r = x.tail(n).norm();
    if (r == 0.0) {
      out.push_back(x);
      continue;
    }
    const Vec v = x.tail(n) / r;
    auto rhs = [&](double tau, double rho) {
      Point y = x;
      y.tail(n) = rho * v;
      return rho * moser_rate(P, 1.0 - tau, y);
    };
    const int steps = static_cast<int>(std::lround(1.0 / step));
    Point y = x;
    y.tail(n) = rk4_scalar(rhs, r, 0.0, 1.0, steps) * v;
    out.push_back(y);
  }
  return out;
}

double radial_log_derivative_sup(const ScalarField& g, const std::vector<Point>& samples) {
  double sup = -INFINITY;
  for (const Point& x : samples) {
    const Jet2 j = g.eval(x);
    const int n = static_cast<int>(x.size()) / 2;
    double dz = 0.0;
    for (int i = 0; i < n; ++i) dz += x(n + i) * j.grad(n + i);
    sup = std::max(sup, dz / j.value);
  }
  return sup;
}

}  // namespace lcs::reference

#include <cmath>
#include <memory>
#include <numbers>

#include "lcs/error.hpp"
#include "lcs/lagrangian.hpp"
#include "lcs/parallel.hpp"
#include "lcs/sampling.hpp"

namespace lcs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// f -> H f + A, the flow map of the linear primitive ODE along a segment.
struct Affine {
  double H = 1.0;
  double A = 0.0;
  double apply(double f) const { return H * f + A; }
};

Affine then(const Affine& first, const Affine& second) {
  return {second.H * first.H, second.H * first.A + second.A};
}

// (i* lambda)_axis and (i* beta)_axis at u, values only.
void coefficients(const ParametricEmbedding& e, const Point& u, int axis, double& c, double& b) {
  const int n = e.target.base.dim();
  const auto jets = e.map.eval(u);
  c = 0.0;
  b = 0.0;
  for (int m = 0; m < n; ++m) c += jets[n + m].value * jets[m].grad(axis);
  if (e.target.beta_is_zero) return;
  Point q(n);
  for (int m = 0; m < n; ++m) q(m) = jets[m].value;
  const Vec beta = e.target.beta_at(e.target.base.normalize(q));
  for (int m = 0; m < n; ++m) b += beta(m) * jets[m].grad(axis);
}

// RK4 for (H, A)' = (b H, b A + c) along start + s e_axis, s in [0, len].
Affine propagate(const ParametricEmbedding& e, Point start, int axis, double len, int steps) {
  Affine y;
  if (len == 0.0) return y;
  const double h = len / steps;
  const double s0 = start(axis);
  double c0, b0;
  coefficients(e, start, axis, c0, b0);
  for (int k = 0; k < steps; ++k) {
    double cm, bm, c1, b1;
    start(axis) = s0 + (k + 0.5) * h;
    coefficients(e, start, axis, cm, bm);
    start(axis) = s0 + (k + 1.0) * h;
    coefficients(e, start, axis, c1, b1);
    const double kH1 = b0 * y.H, kA1 = b0 * y.A + c0;
    const double H2 = y.H + 0.5 * h * kH1, A2 = y.A + 0.5 * h * kA1;
    const double kH2 = bm * H2, kA2 = bm * A2 + cm;
    const double H3 = y.H + 0.5 * h * kH2, A3 = y.A + 0.5 * h * kA2;
    const double kH3 = bm * H3, kA3 = bm * A3 + cm;
    const double H4 = y.H + h * kH3, A4 = y.A + h * kA3;
    const double kH4 = b1 * H4, kA4 = b1 * A4 + c1;
    y.H += h / 6.0 * (kH1 + 2.0 * kH2 + 2.0 * kH3 + kH4);
    y.A += h / 6.0 * (kA1 + 2.0 * kA2 + 2.0 * kA3 + kA4);
    c0 = c1;
    b0 = b1;
  }
  return y;
}

struct PrimitiveTable {
  ParametricEmbedding e;
  Point base;
  int k = 0;
  int N = 0;
  int substeps = 0;
  double h = 0.0;
  std::vector<double> f;

  long linear(const std::vector<int>& idx) const {
    long lin = 0;
    for (int j = 0; j < k; ++j) lin = lin * N + idx[j];
    return lin;
  }

  double value(const Point& x) const {
    const Point u = e.source.normalize(x);
    std::vector<int> idx(k);
    Point node = base;
    for (int j = 0; j < k; ++j) {
      double d = std::fmod(u(j) - base(j), kTwoPi);
      if (d < 0) d += kTwoPi;
      idx[j] = static_cast<int>(std::lround(d / h)) % N;
      node(j) = base(j) + idx[j] * h;
    }
    double val = f[linear(idx)];
    for (int j = 0; j < k; ++j) {
      const double delta = wrap_angle(u(j) - node(j));
      const int steps = std::max(2, static_cast<int>(std::ceil(std::abs(delta) / h * substeps)));
      val = propagate(e, node, j, delta, steps).apply(val);
      node(j) += delta;
    }
    return val;
  }

  Jet2 jet(const Point& x) const {
    const double v = value(x);
    const PulledForms pf = pulled_forms(e, x);
    Jet2 r = Jet2::constant(v, k);
    r.grad = pf.c + v * pf.b;
    Mat H = pf.dc + pf.b * r.grad.transpose() + v * pf.db;
    r.hess = 0.5 * (H + H.transpose());
    return r;
  }
};

}  // namespace

ExactnessCertificate solve_primitive(const ParametricEmbedding& e, const Point& base_point,
                                     const PrimitiveOptions& opt) {
  const ModelManifold& L = e.source;
  if (L.line_count() > 0) throw DimensionError("primitive solver needs a torus source");
  const int k = L.dim();
  auto table = std::make_shared<PrimitiveTable>();
  table->e = e;
  table->base = L.normalize(base_point);
  table->k = k;
  static constexpr int kDefaultNodes[] = {128, 128, 128, 16, 8, 4, 4, 4, 4};
  table->N = opt.nodes_per_axis > 0 ? opt.nodes_per_axis : kDefaultNodes[k];
  const int N = table->N;
  table->substeps = std::max(1, opt.steps_per_loop / N);
  table->h = kTwoPi / N;

  long total = 1;
  std::vector<long> stride(k);
  for (int j = k - 1; j >= 0; --j) {
    stride[j] = total;
    total *= N;
  }
  auto node_of = [&](long lin) {
    std::vector<int> idx(k);
    for (int j = 0; j < k; ++j) idx[j] = static_cast<int>((lin / stride[j]) % N);
    return idx;
  };
  auto point_of = [&](const std::vector<int>& idx) {
    Point p = table->base;
    for (int j = 0; j < k; ++j) p(j) += idx[j] * table->h;
    return p;
  };

  // One step map per (node, axis).
  std::vector<Affine> seg(total * k);
  parallel_for(total * k, [&](long t) {
    const long lin = t / k;
    const int j = static_cast<int>(t % k);
    seg[t] = propagate(e, point_of(node_of(lin)), j, table->h, table->substeps);
  });

  ExactnessCertificate cert;
  cert.tol = opt.tol;
  cert.base_point = table->base;
  std::vector<Affine> loops(k);
  for (int j = 0; j < k; ++j) {
    Affine acc;
    for (int t = 0; t < N; ++t) acc = then(acc, seg[(t * stride[j]) * k + j]);
    loops[j] = acc;
    cert.multiplicative_holonomy.push_back(acc.H);
    cert.beta_periods.push_back(std::log(acc.H));
  }

  int pin = -1;
  double best = 0.0;
  for (int j = 0; j < k; ++j) {
    const double gap = std::abs(1.0 - loops[j].H);
    if (gap > best) {
      best = gap;
      pin = j;
    }
  }
  cert.unique_primitive = best > 1e-6;
  double f0;
  if (cert.unique_primitive) {
    f0 = loops[pin].A / (1.0 - loops[pin].H);
  } else if (opt.base_value) {
    f0 = *opt.base_value;
  } else if (e.declared_primitive) {
    f0 = e.declared_primitive->value(table->base);
  } else {
    f0 = 0.0;
  }
  cert.base_value = f0;

  double worst = -1.0;
  for (int j = 0; j < k; ++j) {
    const double defect = std::abs(loops[j].apply(f0) - f0);
    cert.holonomy_defects.push_back(defect);
    if (defect > worst) {
      worst = defect;
      cert.worst_loop = j;
    }
  }

  // Two comb orders: along the last nonzero axis (table) and along the first.
  std::vector<double> fa(total), fb(total);
  fa[0] = fb[0] = f0;
  for (long lin = 1; lin < total; ++lin) {
    const auto idx = node_of(lin);
    int last = -1, first = -1;
    for (int j = 0; j < k; ++j) {
      if (idx[j] == 0) continue;
      if (first < 0) first = j;
      last = j;
    }
    const long pa = lin - stride[last];
    fa[lin] = seg[pa * k + last].apply(fa[pa]);
    const long pb = lin - stride[first];
    fb[lin] = seg[pb * k + first].apply(fb[pb]);
  }
  for (long lin = 0; lin < total; ++lin) {
    cert.path_discrepancy = std::max(cert.path_discrepancy, std::abs(fa[lin] - fb[lin]));
  }
  table->f = std::move(fa);

  if (e.declared_primitive) {
    cert.has_declared = true;
    const auto grid = parameter_grid(L, opt.check_grid);
    std::vector<double> res(grid.size());
    const ScalarField fd = *e.declared_primitive;
    parallel_for(static_cast<long>(grid.size()), [&](long i) {
      const Jet2 fj = fd.eval(grid[i]);
      const PulledForms pf = pulled_forms(e, grid[i]);
      res[i] = (pf.c - (fj.grad - fj.value * pf.b)).cwiseAbs().maxCoeff();
    });
    for (double r : res) cert.declared_residual = std::max(cert.declared_residual, r);
  }

  cert.residual_sup = std::max(cert.path_discrepancy, cert.declared_residual);
  double max_defect = 0.0;
  for (double dft : cert.holonomy_defects) max_defect = std::max(max_defect, dft);
  cert.valid = cert.residual_sup <= opt.tol && max_defect <= opt.tol;

  std::shared_ptr<const PrimitiveTable> shared = table;
  cert.solved_primitive = ScalarField(L, [shared](const Point& x) { return shared->jet(x); });
  return cert;
}

}  // namespace lcs

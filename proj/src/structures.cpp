#include "lcs/structures.hpp"

#include <cmath>
#include <limits>

#include "lcs/error.hpp"
#include "lcs/parallel.hpp"
#include "lcs/sampling.hpp"

namespace lcs {

Vec CotangentLcsStructure::beta_at(const Point& q) const {
  const FormValue v = base_beta.eval(q);
  Vec b(base.dim());
  for (int i = 0; i < base.dim(); ++i) b(i) = v.coeff[i].value;
  return b;
}

std::vector<Jet2> CotangentLcsStructure::beta_jets(const Point& q) const { return base_beta.eval(q).coeff; }

Form constant_one_form(const ModelManifold& m, const std::vector<double>& coeffs) {
  if (static_cast<int>(coeffs.size()) != m.dim()) throw DimensionError("one coefficient per coordinate expected");
  std::map<Mask, double> c;
  for (int i = 0; i < m.dim(); ++i)
    if (coeffs[i] != 0.0) c[1u << i] = coeffs[i];
  return Form::constant(m, 1, c);
}

Form canonical_liouville(const ModelManifold& tm) {
  if (tm.bundle() == Bundle::Plain) throw DimensionError("canonical form needs a cotangent or jet bundle");
  const int n = tm.base_dim();
  Form lam = Form::zero(tm, 1);
  for (int i = 0; i < n; ++i) lam = lam + ScalarField::coordinate(tm, n + i) * Form::dx(tm, i);
  return lam;
}

SmoothMap bundle_projection(const ModelManifold& bundle) {
  const ModelManifold base = bundle.base();
  const int n = base.dim(), N = bundle.dim();
  return SmoothMap(
      bundle, base,
      [n, N](const Point& x) {
        std::vector<Jet2> out;
        for (int i = 0; i < n; ++i) out.push_back(Jet2::variable(x(i), i, N));
        return out;
      },
      kExactOrder);
}

CotangentLcsStructure make_cotangent_structure(const ModelManifold& base, std::optional<Form> base_beta,
                                               const ClosednessOptions& opt) {
  if (base.bundle() != Bundle::Plain) throw DimensionError("structure base must be a plain manifold");
  CotangentLcsStructure s;
  s.base = base;
  s.total = base.cotangent();
  s.beta_is_zero = !base_beta.has_value();
  s.base_beta = base_beta ? *base_beta : Form::zero(base, 1);
  if (s.base_beta.domain() != base || s.base_beta.degree() != 1) {
    throw DimensionError("Lee form must be a 1-form on the base");
  }
  s.lambda = canonical_liouville(s.total);
  s.beta = pullback(bundle_projection(s.total), s.base_beta);
  s.omega = lichnerowicz_d(s.lambda, s.beta, opt);
  return s;
}

VectorField liouville_vector_field(const CotangentLcsStructure& s) {
  const int n = s.base.dim(), N = s.total.dim();
  return VectorField(s.total, [n, N](const Point& x) {
    std::vector<Jet2> out;
    for (int i = 0; i < n; ++i) out.push_back(Jet2::constant(0.0, N));
    for (int i = 0; i < n; ++i) out.push_back(Jet2::variable(x(n + i), n + i, N));
    return out;
  });
}

Point liouville_flow(const CotangentLcsStructure& s, const Point& x, double t) {
  Point y = s.total.normalize(x);
  const int n = s.base.dim();
  y.tail(n) *= std::exp(t);
  return y;
}

double radial_derivative(const Jet2& g, const ModelManifold& tm, const Point& x) {
  const int n = tm.base_dim();
  return g.grad.segment(n, n).dot(x.segment(n, n));
}

RadialCriterionReport criterion_radial_log_derivative(const ScalarField& g, const CotangentLcsStructure& s,
                                                      const std::vector<Point>& samples) {
  if (g.domain() != s.total) throw DimensionError("g must live on the cotangent bundle");
  RadialCriterionReport rep;
  rep.values.resize(samples.size());
  parallel_for(static_cast<long>(samples.size()), [&](long i) {
    const Point x = s.total.normalize(samples[i]);
    const Jet2 j = g.eval(x);
    if (!(j.value > 0.0)) {
      throw DomainError("conformal factor is not positive: g = " + std::to_string(j.value),
                        std::vector<double>(x.data(), x.data() + x.size()));
    }
    rep.values[i] = radial_derivative(j, s.total, x) / j.value;
  });
  rep.sup = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < samples.size(); ++i) {
    if (rep.values[i] > rep.sup) {
      rep.sup = rep.values[i];
      rep.argmax = samples[i];
    }
  }
  rep.pass = rep.sup < 1.0;
  return rep;
}

SmoothMap rescaling_diffeo(const CotangentLcsStructure& s, const ScalarField& g, const RescalingOptions& opt) {
  if (g.domain() != s.total) throw DimensionError("g must live on the cotangent bundle");
  const auto grid = halton_points(s.total, {opt.grid_count, opt.fiber_radius, 0});
  std::vector<double> dz(grid.size());
  parallel_for(static_cast<long>(grid.size()),
               [&](long i) { dz[i] = radial_derivative(g.eval(grid[i]), s.total, grid[i]); });
  size_t worst = 0;
  for (size_t i = 1; i < dz.size(); ++i)
    if (dz[i] > dz[worst]) worst = i;
  if (!dz.empty() && dz[worst] >= 1.0) {
    const Point& p = grid[worst];
    throw PreconditionError("rescaling needs dg(Z) < 1; found " + std::to_string(dz[worst]),
                            std::vector<double>(p.data(), p.data() + p.size()), dz[worst]);
  }
  const int n = s.base.dim(), N = s.total.dim();
  return SmoothMap(s.total, s.total, [g, n, N](const Point& x) {
    std::vector<Jet2> out;
    const Jet2 scale = exp(-g.eval(x));
    for (int i = 0; i < n; ++i) out.push_back(Jet2::variable(x(i), i, N));
    for (int i = 0; i < n; ++i) out.push_back(scale * Jet2::variable(x(n + i), n + i, N));
    return out;
  });
}

LcsPair gauge_apply(const GaugeTransform& t, const CotangentLcsStructure& s) {
  if (t.g.domain() != s.total) throw DimensionError("gauge function must live on the cotangent bundle");
  Form shifted = s.lambda;
  if (t.f_shift) {
    if (t.f_shift->domain() != s.total) throw DimensionError("gauge shift must live on the cotangent bundle");
    shifted = shifted + lichnerowicz_d(Form::scalar(*t.f_shift), s.beta);
  }
  LcsPair out;
  out.lambda = exp(t.g) * shifted;
  out.beta = s.beta + d(Form::scalar(t.g));
  out.omega = lichnerowicz_d(out.lambda, out.beta);
  return out;
}

}  // namespace lcs

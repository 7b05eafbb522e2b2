#include "lcs/lagrangian.hpp"

#include <algorithm>
#include <cmath>

#include "lcs/error.hpp"
#include "lcs/parallel.hpp"
#include "lcs/sampling.hpp"

namespace lcs {

namespace {

// Jet of d_i f at x. The Hessian of d_i f needs third derivatives of f; they
// come from central differences of the jet Hessian.
Jet2 derivative_jet(const ScalarField& f, const Point& x, const Jet2& fx, int i) {
  constexpr double h = 1e-5;
  const int n = fx.dim();
  Mat third(n, n);
  for (int k = 0; k < n; ++k) {
    Point xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    third.col(k) = (f.eval(xp).hess.col(i) - f.eval(xm).hess.col(i)) / (2.0 * h);
  }
  third = 0.5 * (third + third.transpose()).eval();
  return Jet2(fx.grad(i), fx.hess.col(i), third);
}

// A jet in `sub` coordinates re-expressed in a product chart where those
// coordinates start at `offset`.
Jet2 extend(const Jet2& j, int offset, int total) {
  Jet2 r = Jet2::constant(j.value, total);
  r.grad.segment(offset, j.dim()) = j.grad;
  r.hess.block(offset, offset, j.dim(), j.dim()) = j.hess;
  return r;
}

Point head_values(const std::vector<Jet2>& jets, int n) {
  Point q(n);
  for (int i = 0; i < n; ++i) q(i) = jets[i].value;
  return q;
}

}  // namespace

ParametricEmbedding make_embedding(std::string name, const CotangentLcsStructure& s, SmoothMap map,
                                   std::optional<ScalarField> primitive) {
  if (map.target() != s.total) throw DimensionError("embedding must map into the structure's cotangent bundle");
  if (map.source().dim() != s.base.dim()) {
    throw DimensionError("Lagrangian dimension " + std::to_string(map.source().dim()) +
                         " differs from base dimension " + std::to_string(s.base.dim()));
  }
  if (primitive && primitive->domain() != map.source()) {
    throw DimensionError("declared primitive must live on the source");
  }
  ParametricEmbedding e;
  e.name = std::move(name);
  e.source = map.source();
  e.target = s;
  e.map = std::move(map);
  e.declared_primitive = std::move(primitive);
  return e;
}

PulledForms pulled_forms(const ParametricEmbedding& e, const Point& u) {
  const int n = e.target.base.dim();
  const int k = e.source.dim();
  const auto jets = e.map.eval(u);
  const Point q = e.target.base.normalize(head_values(jets, n));
  const auto bj = e.target.beta_jets(q);
  PulledForms r;
  r.c = Vec::Zero(k);
  r.b = Vec::Zero(k);
  r.dc = Mat::Zero(k, k);
  r.db = Mat::Zero(k, k);
  r.image = Point(2 * n);
  for (int i = 0; i < 2 * n; ++i) r.image(i) = jets[i].value;
  r.image = e.target.total.normalize(r.image);
  for (int m = 0; m < n; ++m) {
    const Jet2& qm = jets[m];
    const Jet2& pm = jets[n + m];
    r.c += pm.value * qm.grad;
    r.dc += qm.grad * pm.grad.transpose() + pm.value * qm.hess;
    if (!e.target.beta_is_zero) {
      // d/du of beta_m(q(u)) = sum_l d_l beta_m * d q_l / du
      Vec dbeta = Vec::Zero(k);
      for (int l = 0; l < n; ++l) dbeta += bj[m].grad(l) * jets[l].grad;
      r.b += bj[m].value * qm.grad;
      r.db += qm.grad * dbeta.transpose() + bj[m].value * qm.hess;
    }
  }
  return r;
}

std::vector<Point> parameter_grid(const ModelManifold& source, int per_axis) {
  if (source.line_count() > 0) throw DimensionError("parameter grids need a compact (torus) source");
  return tensor_grid(source, per_axis, 0.0);
}

LagrangianReport verify_lagrangian(const ParametricEmbedding& e, const std::vector<Point>& samples, double tol,
                                   double rank_tol) {
  LagrangianReport rep;
  rep.tol = tol;
  std::vector<double> res(samples.size()), sig(samples.size());
  parallel_for(static_cast<long>(samples.size()), [&](long i) {
    const Eigen::MatrixXd J = e.map.jacobian(samples[i]);
    sig[i] = Eigen::JacobiSVD<Eigen::MatrixXd>(J).singularValues().minCoeff();
    // i* d_beta lambda = d(i* lambda) - i* beta ^ i* lambda, componentwise.
    const PulledForms pf = pulled_forms(e, samples[i]);
    const int k = static_cast<int>(pf.c.size());
    double worst = 0.0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        worst = std::max(worst, std::abs(pf.dc(b, a) - pf.dc(a, b) - (pf.b(a) * pf.c(b) - pf.b(b) * pf.c(a))));
    res[i] = worst;
  });
  rep.min_singular = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < samples.size(); ++i) {
    if (res[i] >= rep.residual_sup) {
      rep.residual_sup = res[i];
      rep.worst = samples[i];
    }
    if (sig[i] < rep.min_singular) {
      rep.min_singular = sig[i];
      rep.worst_immersion = samples[i];
    }
  }
  rep.immersion_ok = rep.min_singular > rank_tol;
  rep.pass = rep.immersion_ok && rep.residual_sup <= tol;
  return rep;
}

ParametricEmbedding translate_by_form(const ParametricEmbedding& e, const Form& eta, double c) {
  const auto& s = e.target;
  if (eta.domain() != s.base || eta.degree() != 1) throw DimensionError("translation needs a 1-form on the base");
  const int n = s.base.dim();
  const ModelManifold base = s.base;
  SmoothMap inner = e.map;
  SmoothMap moved(
      e.source, s.total,
      [inner, eta, c, n, base](const Point& u) {
        auto jets = inner.eval(u);
        const std::vector<Jet2> qj(jets.begin(), jets.begin() + n);
        const FormValue ev = eta.eval(base.normalize(head_values(jets, n)));
        for (int i = 0; i < n; ++i) jets[n + i] += c * chain(ev.coeff[i], qj);
        return jets;
      },
      inner.order());
  std::optional<ScalarField> prim;
  if (e.declared_primitive && eta.node() == s.base_beta.node()) prim = *e.declared_primitive - c;
  return make_embedding(e.name + "+translate", s, moved, prim);
}

ParametricEmbedding beta_graph(const ScalarField& f, const CotangentLcsStructure& s) {
  if (f.domain() != s.base) throw DimensionError("beta-graph function must live on the base");
  const int n = s.base.dim();
  const CotangentLcsStructure st = s;
  SmoothMap map(s.base, s.total, [f, st, n](const Point& x) {
    const Jet2 fx = f.eval(x);
    const auto bj = st.beta_jets(x);
    std::vector<Jet2> out;
    for (int i = 0; i < n; ++i) out.push_back(Jet2::variable(x(i), i, n));
    for (int i = 0; i < n; ++i) {
      Jet2 p = derivative_jet(f, x, fx, i);
      if (!st.beta_is_zero) p -= fx * bj[i];
      out.push_back(p);
    }
    return out;
  });
  return make_embedding("beta-graph", s, map, f);
}

ParametricEmbedding zero_section(const CotangentLcsStructure& s) {
  const int n = s.base.dim();
  SmoothMap map(
      s.base, s.total,
      [n](const Point& x) {
        std::vector<Jet2> out;
        for (int i = 0; i < n; ++i) out.push_back(Jet2::variable(x(i), i, n));
        for (int i = 0; i < n; ++i) out.push_back(Jet2::constant(0.0, n));
        return out;
      },
      kExactOrder);
  return make_embedding("zero-section", s, map, ScalarField::constant(s.base, 0.0));
}

LegendrianEmbedding jet_graph(const ScalarField& F) {
  const ModelManifold m = F.domain();
  const int n = m.dim();
  LegendrianEmbedding l;
  l.name = "jet-graph";
  l.source = m;
  l.jet_space = m.jet1();
  l.map = SmoothMap(m, l.jet_space, [F, n](const Point& x) {
    const Jet2 fx = F.eval(x);
    std::vector<Jet2> out;
    for (int i = 0; i < n; ++i) out.push_back(Jet2::variable(x(i), i, n));
    for (int i = 0; i < n; ++i) out.push_back(derivative_jet(F, x, fx, i));
    out.push_back(fx);
    return out;
  });
  return l;
}

double legendrian_residual(const LegendrianEmbedding& l, const std::vector<Point>& samples) {
  const int n = l.jet_space.base_dim();
  std::vector<double> res(samples.size());
  parallel_for(static_cast<long>(samples.size()), [&](long s) {
    const auto jets = l.map.eval(samples[s]);
    Vec r = jets[2 * n].grad;
    for (int i = 0; i < n; ++i) r -= jets[n + i].value * jets[i].grad;
    res[s] = r.cwiseAbs().maxCoeff();
  });
  double worst = 0.0;
  for (double v : res) worst = std::max(worst, v);
  return worst;
}

ParametricEmbedding lift_legendrian(const LegendrianEmbedding& l, const Form& q_form, double tol, int check_samples) {
  if (l.jet_space.bundle() != Bundle::Jet1) throw DimensionError("Legendrian must map into a 1-jet space");
  if (q_form.degree() != 1) throw DimensionError("lift needs a 1-form on Q");
  const ModelManifold M = l.jet_space.base();
  const ModelManifold Q = q_form.domain();
  const int n = M.dim(), m = Q.dim(), k = l.source.dim();

  const auto samples = halton_points(l.source, {check_samples, 4.0, 0});
  std::vector<double> res(samples.size());
  parallel_for(static_cast<long>(samples.size()), [&](long s) {
    const auto jets = l.map.eval(samples[s]);
    Vec r = jets[2 * n].grad;
    for (int i = 0; i < n; ++i) r -= jets[n + i].value * jets[i].grad;
    res[s] = r.cwiseAbs().maxCoeff();
  });
  for (size_t s = 0; s < samples.size(); ++s) {
    if (res[s] > tol) {
      const Point& p = samples[s];
      throw ValidationError("not Legendrian: |i*(dz - lambda)| = " + std::to_string(res[s]),
                            std::vector<double>(p.data(), p.data() + p.size()), res[s]);
    }
  }
  const auto qs = halton_points(Q, {check_samples, 4.0, 0});
  for (const auto& x : qs) {
    const double norm = q_form.eval(x).max_abs();
    if (norm <= tol) {
      throw ValidationError("form on Q vanishes", std::vector<double>(x.data(), x.data() + x.size()), norm);
    }
  }

  std::vector<std::string> labels = M.labels();
  for (const auto& lab : Q.labels()) {
    std::string name = lab;
    while (std::find(labels.begin(), labels.end(), name) != labels.end()) name += "'";
    labels.push_back(name);
  }
  const ModelManifold base = M.product(Q).with_labels(labels);
  std::vector<std::string> src_labels = l.source.labels();
  for (const auto& lab : Q.labels()) {
    std::string name = lab;
    while (std::find(src_labels.begin(), src_labels.end(), name) != src_labels.end()) name += "'";
    src_labels.push_back(name);
  }
  const ModelManifold source = l.source.product(Q).with_labels(src_labels);

  SmoothMap to_q(base, Q,
                 [n, m](const Point& x) {
                   std::vector<Jet2> out;
                   for (int i = 0; i < m; ++i) out.push_back(Jet2::variable(x(n + i), n + i, n + m));
                   return out;
                 },
                 kExactOrder);
  const CotangentLcsStructure s = make_cotangent_structure(base, pullback(to_q, q_form));

  const SmoothMap lm = l.map;
  const int total = k + m;
  SmoothMap map(source, s.total, [lm, q_form, n, m, k, total](const Point& u) {
    const Point lu = u.head(k);
    const Point x = u.tail(m);
    const auto jets = lm.eval(lu);
    const FormValue bq = q_form.eval(x);
    std::vector<Jet2> out;
    for (int i = 0; i < n; ++i) out.push_back(extend(jets[i], 0, total));
    for (int i = 0; i < m; ++i) out.push_back(Jet2::variable(x(i), k + i, total));
    for (int i = 0; i < n; ++i) out.push_back(extend(jets[n + i], 0, total));
    const Jet2 z = extend(jets[2 * n], 0, total);
    for (int i = 0; i < m; ++i) out.push_back(-(z * extend(bq.coeff[i], k, total)));
    return out;
  });
  ScalarField prim(source, [lm, n, k, total](const Point& u) {
    const Point lu = u.head(k);
    return extend(lm.eval(lu)[2 * n], 0, total);
  });
  return make_embedding(l.name + "-lift", s, map, prim);
}

SmoothMap symplectization_immersion(const ParametricEmbedding& e, const ExactnessCertificate& cert) {
  if (!cert.valid || !cert.solved_primitive) {
    throw PreconditionError("symplectization needs a valid exactness certificate", {}, cert.residual_sup);
  }
  const ScalarField f = *cert.solved_primitive;
  const CotangentLcsStructure s = e.target;
  const SmoothMap inner = e.map;
  const int n = s.base.dim();
  return SmoothMap(e.source, s.total,
                   [f, s, inner, n](const Point& u) {
                     auto jets = inner.eval(u);
                     if (s.beta_is_zero) return jets;
                     const std::vector<Jet2> qj(jets.begin(), jets.begin() + n);
                     const auto bj = s.beta_jets(s.base.normalize(head_values(jets, n)));
                     const Jet2 fu = f.eval(u);
                     for (int i = 0; i < n; ++i) jets[n + i] += fu * chain(bj[i], qj);
                     return jets;
                   });
}

ContactLiftReport contact_lift_check(const ModelManifold& J, const Form& base_beta, const std::vector<Point>& samples,
                                     double tol) {
  if (J.bundle() != Bundle::Jet1) throw DimensionError("contact check needs a 1-jet space");
  const int n = J.base_dim();
  if (base_beta.domain() != J.base() || base_beta.degree() != 1) throw DimensionError("beta must be a 1-form on M");
  SmoothMap proj = bundle_projection(J);
  const Form lam = canonical_liouville(J);
  const Form alpha = Form::dx(J, 2 * n) - lam;
  const Form alpha2 = alpha + ScalarField::coordinate(J, 2 * n) * pullback(proj, base_beta);
  const Form top = wedge(alpha, wedge_power(d(alpha), n));
  const Form top2 = wedge(alpha2, wedge_power(d(alpha2), n));
  std::vector<double> diff(samples.size()), vol(samples.size());
  parallel_for(static_cast<long>(samples.size()), [&](long i) {
    const FormValue a = top.eval(samples[i]);
    const FormValue b = top2.eval(samples[i]);
    diff[i] = max_abs_diff(a, b);
    vol[i] = std::abs(b.coeff[0].value);
  });
  ContactLiftReport rep;
  rep.min_abs_volume = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < samples.size(); ++i) {
    rep.max_difference = std::max(rep.max_difference, diff[i]);
    rep.min_abs_volume = std::min(rep.min_abs_volume, vol[i]);
  }
  rep.equal = rep.max_difference <= tol;
  rep.nonvanishing = rep.min_abs_volume > tol;
  return rep;
}

std::optional<double> cobordism_gluing_constant(double f0, double ft0, double t0) {
  const double e = std::exp(t0);
  if (t0 == 0.0 || e == 1.0) return std::nullopt;
  return (e * ft0 - f0) / (1.0 - e);
}

}  // namespace lcs

#include "lcs/forms.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <mutex>

#include "lcs/error.hpp"
#include "lcs/parallel.hpp"
#include "lcs/sampling.hpp"

namespace lcs {

namespace {

struct MaskTables {
  std::array<std::array<std::vector<Mask>, kMaxDim + 1>, kMaxDim + 1> lists;
  std::array<std::array<int, 1u << kMaxDim>, kMaxDim + 1> pos;
  MaskTables() {
    for (int n = 0; n <= kMaxDim; ++n) {
      pos[n].fill(-1);
      for (Mask m = 0; m < (1u << n); ++m) {
        const int k = std::popcount(m);
        pos[n][m] = static_cast<int>(lists[n][k].size());
        lists[n][k].push_back(m);
      }
    }
  }
};

const MaskTables& tables() {
  static const MaskTables t;
  return t;
}

const std::vector<Mask> kEmpty;

int count_below(Mask m, int i) { return std::popcount(m & ((1u << i) - 1u)); }

// Sign of dx_I ^ dx_J relative to the increasing order of I u J.
int wedge_sign(Mask I, Mask J) {
  int swaps = 0;
  for (Mask j = J; j; j &= j - 1) {
    const int jj = std::countr_zero(j);
    swaps += std::popcount(I >> (jj + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

Jet2 zero_jet(int n) { return Jet2::constant(0.0, n); }

// Adds s*b into a without touching the Hessian when it is not needed.
void axpy(Jet2& a, double s, const Jet2& b) {
  a.value += s * b.value;
  a.grad += s * b.grad;
  a.hess += s * b.hess;
}

// First partial derivative of a jet; the Hessian is unknown and left zero.
Jet2 partial(const Jet2& c, int i) {
  return Jet2(c.grad(i), c.hess.col(i), Mat::Zero(c.dim(), c.dim()));
}

Jet2 jet_det(const std::vector<const Jet2*>& M, int k, std::vector<int>& cols, int row) {
  if (row == k) return Jet2::constant(1.0, M[0]->dim());
  Jet2 acc = zero_jet(M[0]->dim());
  int sign = 1;
  for (int c = 0; c < k; ++c) {
    if (cols[c] < 0) continue;
    const int col = cols[c];
    cols[c] = -1;
    Jet2 minor = jet_det(M, k, cols, row + 1);
    cols[c] = col;
    minor *= *M[row * k + col];
    axpy(acc, sign, minor);
    sign = -sign;
  }
  return acc;
}

double pf_rec(const Eigen::MatrixXd& A, std::vector<int>& idx) {
  if (idx.empty()) return 1.0;
  const int i0 = idx[0];
  double acc = 0.0;
  for (size_t j = 1; j < idx.size(); ++j) {
    const double a = A(i0, idx[j]);
    if (a == 0.0) continue;
    std::vector<int> rest;
    rest.reserve(idx.size() - 2);
    for (size_t k = 1; k < idx.size(); ++k)
      if (k != j) rest.push_back(idx[k]);
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    acc += sign * a * pf_rec(A, rest);
  }
  return acc;
}

}  // namespace

const std::vector<Mask>& masks(int n, int k) {
  if (n < 0 || n > kMaxDim) throw DimensionError("mask table dimension out of range");
  if (k < 0 || k > n) return kEmpty;
  return tables().lists[n][k];
}

int mask_position(int n, Mask m) {
  if (n < 0 || n > kMaxDim || m >= (1u << n)) return -1;
  return tables().pos[n][m];
}

Mask mask_of(std::initializer_list<int> indices) {
  Mask m = 0;
  for (int i : indices) m |= 1u << i;
  return m;
}

// --- FormValue -------------------------------------------------------------

FormValue FormValue::zero(int dim, int degree) {
  FormValue v;
  v.dim = dim;
  v.degree = degree;
  v.coeff.assign(masks(dim, degree).size(), zero_jet(dim));
  return v;
}

double FormValue::at(Mask m) const {
  if (std::popcount(m) != degree) return 0.0;
  const int p = mask_position(dim, m);
  return p < 0 ? 0.0 : coeff[p].value;
}

double FormValue::component(const std::vector<int>& indices) const {
  if (static_cast<int>(indices.size()) != degree) throw DimensionError("wrong number of indices");
  std::vector<int> idx = indices;
  int sign = 1;
  for (size_t i = 0; i < idx.size(); ++i) {
    for (size_t j = 0; j + 1 < idx.size() - i; ++j) {
      if (idx[j] == idx[j + 1]) return 0.0;
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
    }
  }
  Mask m = 0;
  for (int i : idx) {
    if (m & (1u << i)) return 0.0;
    m |= 1u << i;
  }
  return sign * at(m);
}

Eigen::VectorXd FormValue::values() const {
  Eigen::VectorXd v(coeff.size());
  for (size_t i = 0; i < coeff.size(); ++i) v(i) = coeff[i].value;
  return v;
}

Eigen::MatrixXd FormValue::matrix() const {
  if (degree != 2) throw DimensionError("coefficient matrix needs a 2-form");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
  const auto& ms = masks(dim, 2);
  for (size_t k = 0; k < ms.size(); ++k) {
    const int i = std::countr_zero(ms[k]);
    const int j = 31 - std::countl_zero(ms[k]);
    A(i, j) = coeff[k].value;
    A(j, i) = -coeff[k].value;
  }
  return A;
}

double FormValue::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeff) m = std::max(m, std::abs(c.value));
  return m;
}

namespace {
void require_compatible(const FormValue& a, const FormValue& b) {
  if (a.dim != b.dim || a.degree != b.degree) throw DimensionError("form values of different shape");
}
}  // namespace

FormValue operator+(const FormValue& a, const FormValue& b) {
  require_compatible(a, b);
  FormValue r = a;
  r.order = std::min(a.order, b.order);
  for (size_t i = 0; i < r.coeff.size(); ++i) r.coeff[i] += b.coeff[i];
  return r;
}

FormValue operator-(const FormValue& a, const FormValue& b) {
  require_compatible(a, b);
  FormValue r = a;
  r.order = std::min(a.order, b.order);
  for (size_t i = 0; i < r.coeff.size(); ++i) r.coeff[i] -= b.coeff[i];
  return r;
}

FormValue operator*(double s, const FormValue& a) {
  FormValue r = a;
  for (auto& c : r.coeff) c *= s;
  return r;
}

FormValue wedge(const FormValue& a, const FormValue& b) {
  if (a.dim != b.dim) throw DimensionError("wedge of forms on different manifolds");
  FormValue r = FormValue::zero(a.dim, a.degree + b.degree);
  r.order = std::min(a.order, b.order);
  if (r.coeff.empty()) return r;
  const auto& ma = masks(a.dim, a.degree);
  const auto& mb = masks(b.dim, b.degree);
  for (size_t i = 0; i < ma.size(); ++i) {
    for (size_t j = 0; j < mb.size(); ++j) {
      if (ma[i] & mb[j]) continue;
      const int p = mask_position(a.dim, ma[i] | mb[j]);
      axpy(r.coeff[p], wedge_sign(ma[i], mb[j]), a.coeff[i] * b.coeff[j]);
    }
  }
  return r;
}

FormValue exterior_d(const FormValue& a) {
  if (a.order <= 0) throw DimensionError("exterior derivative of a form with no derivative information left");
  FormValue r = FormValue::zero(a.dim, a.degree + 1);
  r.order = a.order >= kExactOrder ? kExactOrder : a.order - 1;
  const auto& mt = masks(a.dim, a.degree + 1);
  for (size_t k = 0; k < mt.size(); ++k) {
    const Mask J = mt[k];
    for (Mask rest = J; rest; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      const int p = mask_position(a.dim, J ^ (1u << i));
      const double s = (count_below(J, i) & 1) ? -1.0 : 1.0;
      axpy(r.coeff[k], s, partial(a.coeff[p], i));
    }
  }
  return r;
}

FormValue contract(const std::vector<Jet2>& X, const FormValue& a) {
  if (a.degree < 1) throw DimensionError("contraction of a 0-form");
  if (static_cast<int>(X.size()) != a.dim) throw DimensionError("vector field and form dimensions differ");
  FormValue r = FormValue::zero(a.dim, a.degree - 1);
  r.order = a.order;
  const auto& mt = masks(a.dim, a.degree - 1);
  for (size_t k = 0; k < mt.size(); ++k) {
    for (int j = 0; j < a.dim; ++j) {
      if (mt[k] & (1u << j)) continue;
      const Mask full = mt[k] | (1u << j);
      const double s = (count_below(full, j) & 1) ? -1.0 : 1.0;
      axpy(r.coeff[k], s, X[j] * a.coeff[mask_position(a.dim, full)]);
    }
  }
  return r;
}

double max_abs_diff(const FormValue& a, const FormValue& b) { return (a - b).max_abs(); }

double pfaffian(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols() || A.rows() % 2) throw DimensionError("Pfaffian needs an even square matrix");
  std::vector<int> idx(A.rows());
  for (int i = 0; i < A.rows(); ++i) idx[i] = i;
  return pf_rec(A, idx);
}

Jet2 chain(const Jet2& outer, const std::vector<Jet2>& inner) {
  const int m = static_cast<int>(inner.size());
  const int n = inner.empty() ? 0 : inner[0].dim();
  Mat J(m, n);
  for (int k = 0; k < m; ++k) J.row(k) = inner[k].grad.transpose();
  Jet2 r;
  r.value = outer.value;
  r.grad = J.transpose() * outer.grad;
  r.hess = J.transpose() * outer.hess * J;
  for (int k = 0; k < m; ++k) r.hess += outer.grad(k) * inner[k].hess;
  return r;
}

// --- SmoothMap -------------------------------------------------------------

SmoothMap::SmoothMap(ModelManifold source, ModelManifold target, Evaluator eval, int order)
    : source_(std::make_shared<const ModelManifold>(std::move(source))),
      target_(std::make_shared<const ModelManifold>(std::move(target))),
      eval_(std::make_shared<const Evaluator>(std::move(eval))),
      order_(order) {}

SmoothMap SmoothMap::from_fields(const ModelManifold& source, const ModelManifold& target,
                                 std::vector<ScalarField> comps) {
  if (static_cast<int>(comps.size()) != target.dim()) {
    throw DimensionError("map needs one component per target coordinate");
  }
  for (const auto& c : comps) {
    if (c.domain() != source) throw DimensionError("map component defined on the wrong manifold");
  }
  return SmoothMap(source, target, [comps](const Point& x) {
    std::vector<Jet2> out;
    out.reserve(comps.size());
    for (const auto& c : comps) out.push_back(c.eval(x));
    return out;
  });
}

SmoothMap SmoothMap::identity(const ModelManifold& m) {
  const int n = m.dim();
  return SmoothMap(
      m, m,
      [n](const Point& x) {
        std::vector<Jet2> out;
        for (int i = 0; i < n; ++i) out.push_back(Jet2::variable(x(i), i, n));
        return out;
      },
      kExactOrder);
}

std::vector<Jet2> SmoothMap::eval(const Point& x) const {
  auto out = (*eval_)(source_->normalize(x));
  if (static_cast<int>(out.size()) != target_->dim()) {
    throw DimensionError("map evaluator returned the wrong number of components");
  }
  return out;
}

Point SmoothMap::apply(const Point& x) const {
  auto jets = eval(x);
  Point y(jets.size());
  for (size_t i = 0; i < jets.size(); ++i) y(i) = jets[i].value;
  return target_->normalize(y);
}

Eigen::MatrixXd SmoothMap::jacobian(const Point& x) const {
  auto jets = eval(x);
  Eigen::MatrixXd J(jets.size(), source_->dim());
  for (size_t i = 0; i < jets.size(); ++i) J.row(i) = jets[i].grad.transpose();
  return J;
}

ScalarField SmoothMap::component(int i) const {
  SmoothMap self = *this;
  return ScalarField(source(), [self, i](const Point& x) { return self.eval(x)[i]; });
}

namespace {
Point values_of(const std::vector<Jet2>& jets, const ModelManifold& m) {
  Point y(jets.size());
  for (size_t i = 0; i < jets.size(); ++i) y(i) = jets[i].value;
  return m.normalize(y);
}
}  // namespace

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
  if (outer.source() != inner.target()) throw DimensionError("composition of incompatible maps");
  return SmoothMap(
      inner.source(), outer.target(),
      [outer, inner](const Point& x) {
        auto in = inner.eval(x);
        auto out = outer.eval(values_of(in, inner.target()));
        std::vector<Jet2> r;
        r.reserve(out.size());
        for (const auto& o : out) r.push_back(chain(o, in));
        return r;
      },
      std::min(outer.order(), inner.order()));
}

ScalarField compose(const ScalarField& f, const SmoothMap& phi) {
  if (f.domain() != phi.target()) throw DimensionError("field does not live on the map's target");
  return ScalarField(phi.source(), [f, phi](const Point& x) {
    auto in = phi.eval(x);
    return chain(f.eval(values_of(in, phi.target())), in);
  });
}

// --- Form nodes ------------------------------------------------------------

struct Form::Node {
  ModelManifold domain;
  int degree;
  Node(ModelManifold m, int k) : domain(std::move(m)), degree(k) {}
  virtual ~Node() = default;
  // x is already normalized.
  virtual FormValue eval(const Point& x) const = 0;

  mutable std::mutex closed_mutex;
  mutable int closed_samples = 0;
  mutable double closed_tol = -1.0;
};

namespace {

using NodePtr = std::shared_ptr<const Form::Node>;

struct ConstNode final : Form::Node {
  FormValue value;
  ConstNode(const ModelManifold& m, int k, const std::map<Mask, double>& c) : Node(m, k) {
    value = FormValue::zero(m.dim(), k);
    for (const auto& [mask, v] : c) {
      if (std::popcount(mask) != k || mask_position(m.dim(), mask) < 0) {
        throw DimensionError("constant form coefficient index does not match degree");
      }
      value.coeff[mask_position(m.dim(), mask)].value = v;
    }
  }
  FormValue eval(const Point&) const override { return value; }
};

struct ScalarNode final : Form::Node {
  ScalarField f;
  explicit ScalarNode(ScalarField field) : Node(field.domain(), 0), f(std::move(field)) {}
  FormValue eval(const Point& x) const override {
    FormValue v;
    v.dim = domain.dim();
    v.degree = 0;
    v.order = 2;
    v.coeff.push_back(f.eval(x));
    return v;
  }
};

struct SumNode final : Form::Node {
  NodePtr a, b;
  double sb;
  SumNode(NodePtr x, NodePtr y, double s) : Node(x->domain, x->degree), a(std::move(x)), b(std::move(y)), sb(s) {}
  FormValue eval(const Point& x) const override {
    FormValue r = a->eval(x);
    FormValue v = b->eval(x);
    r.order = std::min(r.order, v.order);
    for (size_t i = 0; i < r.coeff.size(); ++i) axpy(r.coeff[i], sb, v.coeff[i]);
    return r;
  }
};

struct ScaleNode final : Form::Node {
  NodePtr a;
  double s;
  ScaleNode(NodePtr x, double scale) : Node(x->domain, x->degree), a(std::move(x)), s(scale) {}
  FormValue eval(const Point& x) const override { return s * a->eval(x); }
};

struct WedgeNode final : Form::Node {
  NodePtr a, b;
  WedgeNode(NodePtr x, NodePtr y) : Node(x->domain, x->degree + y->degree), a(std::move(x)), b(std::move(y)) {}
  FormValue eval(const Point& x) const override { return wedge(a->eval(x), b->eval(x)); }
};

struct DNode final : Form::Node {
  NodePtr a;
  explicit DNode(NodePtr x) : Node(x->domain, x->degree + 1), a(std::move(x)) {}
  FormValue eval(const Point& x) const override { return exterior_d(a->eval(x)); }
};

struct LichNode final : Form::Node {
  NodePtr a, beta;
  LichNode(NodePtr x, NodePtr b) : Node(x->domain, x->degree + 1), a(std::move(x)), beta(std::move(b)) {}
  FormValue eval(const Point& x) const override {
    FormValue av = a->eval(x);
    return exterior_d(av) - wedge(beta->eval(x), av);
  }
};

struct PullNode final : Form::Node {
  SmoothMap phi;
  NodePtr a;
  PullNode(SmoothMap map, NodePtr x) : Node(map.source(), x->degree), phi(std::move(map)), a(std::move(x)) {}
  FormValue eval(const Point& x) const override {
    const auto jets = phi.eval(x);
    const FormValue at = a->eval(values_of(jets, phi.target()));
    const int n = phi.source().dim();
    const int m = phi.target().dim();
    const int k = degree;
    FormValue r = FormValue::zero(n, k);
    const int map_order = k == 0 ? phi.order() : (phi.order() >= kExactOrder ? kExactOrder : phi.order() - 1);
    r.order = std::min(at.order, map_order);

    std::vector<Jet2> composed(at.coeff.size());
    for (size_t j = 0; j < at.coeff.size(); ++j) composed[j] = chain(at.coeff[j], jets);
    if (k == 0) {
      r.coeff[0] = composed[0];
      return r;
    }
    // Jacobian entries as jets: d phi_j / d x_i.
    std::vector<Jet2> D(m * n);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < n; ++i) D[j * n + i] = partial(jets[j], i);

    const auto& ms = masks(n, k);
    const auto& mt = masks(m, k);
    std::vector<const Jet2*> minor(k * k);
    std::vector<int> cols(k);
    for (size_t s = 0; s < ms.size(); ++s) {
      int si[kMaxDim], c = 0;
      for (Mask t = ms[s]; t; t &= t - 1) si[c++] = std::countr_zero(t);
      for (size_t t = 0; t < mt.size(); ++t) {
        if (composed[t].value == 0.0 && composed[t].grad.isZero(0.0) && composed[t].hess.isZero(0.0)) continue;
        int ti[kMaxDim];
        c = 0;
        for (Mask u = mt[t]; u; u &= u - 1) ti[c++] = std::countr_zero(u);
        for (int a1 = 0; a1 < k; ++a1)
          for (int b1 = 0; b1 < k; ++b1) minor[a1 * k + b1] = &D[ti[a1] * n + si[b1]];
        for (int q = 0; q < k; ++q) cols[q] = q;
        Jet2 det = jet_det(minor, k, cols, 0);
        det *= composed[t];
        r.coeff[s] += det;
      }
    }
    return r;
  }
};

struct ContractNode final : Form::Node {
  VectorField X;
  NodePtr a;
  ContractNode(VectorField v, NodePtr x) : Node(x->domain, x->degree - 1), X(std::move(v)), a(std::move(x)) {}
  FormValue eval(const Point& x) const override { return contract(X.eval(x), a->eval(x)); }
};

void require_same(const Form& a, const Form& b) {
  if (!a.valid() || !b.valid()) throw DimensionError("operation on an empty form");
  if (a.domain() != b.domain()) {
    throw DimensionError("forms on different manifolds: " + a.domain().describe() + " vs " + b.domain().describe());
  }
}

}  // namespace

Form Form::zero(const ModelManifold& m, int degree) { return constant(m, degree, {}); }

Form Form::constant(const ModelManifold& m, int degree, const std::map<Mask, double>& coeffs) {
  if (degree < 0) throw DimensionError("negative form degree");
  return Form(std::make_shared<ConstNode>(m, degree, coeffs));
}

Form Form::dx(const ModelManifold& m, int index) {
  if (index < 0 || index >= m.dim()) throw DimensionError("coordinate differential index out of range");
  return constant(m, 1, {{1u << index, 1.0}});
}

Form Form::scalar(const ScalarField& f) { return Form(std::make_shared<ScalarNode>(f)); }

const ModelManifold& Form::domain() const { return node_->domain; }
int Form::degree() const { return node_->degree; }

FormValue Form::eval(const Point& x) const { return node_->eval(domain().normalize(x)); }

Form operator+(const Form& a, const Form& b) {
  require_same(a, b);
  if (a.degree() != b.degree()) throw DimensionError("sum of forms of different degree");
  return Form(std::make_shared<SumNode>(a.node(), b.node(), 1.0));
}

Form operator-(const Form& a, const Form& b) {
  require_same(a, b);
  if (a.degree() != b.degree()) throw DimensionError("difference of forms of different degree");
  return Form(std::make_shared<SumNode>(a.node(), b.node(), -1.0));
}

Form operator-(const Form& a) { return -1.0 * a; }

Form operator*(double s, const Form& a) { return Form(std::make_shared<ScaleNode>(a.node(), s)); }

Form operator*(const ScalarField& f, const Form& a) { return wedge(Form::scalar(f), a); }

Form wedge(const Form& a, const Form& b) {
  require_same(a, b);
  return Form(std::make_shared<WedgeNode>(a.node(), b.node()));
}

Form wedge_power(const Form& a, int n) {
  if (n < 0) throw DimensionError("negative wedge power");
  Form r = Form::constant(a.domain(), 0, {{0u, 1.0}});
  for (int i = 0; i < n; ++i) r = wedge(r, a);
  return r;
}

Form d(const Form& a) { return Form(std::make_shared<DNode>(a.node())); }

void validate_closed(const Form& beta, const ClosednessOptions& opt) {
  const auto& node = *beta.node();
  {
    std::lock_guard<std::mutex> lock(node.closed_mutex);
    if (node.closed_samples >= opt.samples && node.closed_tol >= 0.0 && node.closed_tol <= opt.tol) return;
  }
  const Form dbeta = d(beta);
  const auto pts = halton_points(beta.domain(), {opt.samples, opt.line_radius, 0});
  std::vector<double> res(pts.size());
  parallel_for(static_cast<long>(pts.size()), [&](long i) { res[i] = dbeta.eval(pts[i]).max_abs(); });
  const auto worst = std::max_element(res.begin(), res.end());
  if (worst != res.end() && *worst > opt.tol) {
    const Point& p = pts[worst - res.begin()];
    throw ValidationError("Lee form is not closed: |d beta| = " + std::to_string(*worst),
                          std::vector<double>(p.data(), p.data() + p.size()), *worst);
  }
  std::lock_guard<std::mutex> lock(node.closed_mutex);
  node.closed_samples = std::max(node.closed_samples, opt.samples);
  node.closed_tol = node.closed_tol < 0.0 ? opt.tol : std::min(node.closed_tol, opt.tol);
}

Form lichnerowicz_d(const Form& alpha, const Form& beta, const ClosednessOptions& opt) {
  require_same(alpha, beta);
  if (beta.degree() != 1) throw DimensionError("Lee form must have degree 1");
  validate_closed(beta, opt);
  return Form(std::make_shared<LichNode>(alpha.node(), beta.node()));
}

Form pullback(const SmoothMap& phi, const Form& alpha) {
  if (phi.target() != alpha.domain()) {
    throw DimensionError("pullback: map target " + phi.target().describe() + " is not the form's domain " +
                         alpha.domain().describe());
  }
  return Form(std::make_shared<PullNode>(phi, alpha.node()));
}

Form interior_product(const VectorField& X, const Form& alpha) {
  if (alpha.degree() < 1) throw DimensionError("interior product of a 0-form");
  if (X.domain() != alpha.domain()) throw DimensionError("vector field and form on different manifolds");
  return Form(std::make_shared<ContractNode>(X, alpha.node()));
}

NondegeneracyReport check_nondegenerate(const Form& omega, const std::vector<Point>& samples, double tol) {
  if (omega.degree() != 2) throw DimensionError("nondegeneracy test needs a 2-form");
  if (omega.domain().dim() % 2) throw DimensionError("nondegeneracy test on an odd-dimensional manifold");
  NondegeneracyReport rep;
  rep.tol = tol;
  rep.pfaffian.resize(samples.size());
  rep.abs_det.resize(samples.size());
  parallel_for(static_cast<long>(samples.size()), [&](long i) {
    const double pf = pfaffian(omega.eval(samples[i]).matrix());
    rep.pfaffian[i] = pf;
    rep.abs_det[i] = pf * pf;
  });
  rep.min_abs_det = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < samples.size(); ++i) {
    if (rep.abs_det[i] < rep.min_abs_det) {
      rep.min_abs_det = rep.abs_det[i];
      rep.argmin = samples[i];
    }
  }
  rep.nondegenerate = !samples.empty() && rep.min_abs_det > tol;
  return rep;
}

}  // namespace lcs

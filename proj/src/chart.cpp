#include "lcs/chart.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lcs/error.hpp"

namespace lcs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::string> default_labels(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

}  // namespace

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r > std::numbers::pi) r -= kTwoPi;
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

ModelManifold ModelManifold::make(int circle_count, int line_count) {
  if (circle_count < 0 || line_count < 0) {
    throw DimensionError("coordinate counts must be nonnegative");
  }
  if (circle_count + line_count < 1) {
    throw DimensionError("manifold must have dimension at least 1");
  }
  std::vector<CoordKind> kinds(circle_count, CoordKind::Circle);
  kinds.insert(kinds.end(), line_count, CoordKind::Line);
  return from_kinds(std::move(kinds));
}

ModelManifold ModelManifold::from_kinds(std::vector<CoordKind> kinds, std::vector<std::string> labels) {
  const int n = static_cast<int>(kinds.size());
  if (n < 1) throw DimensionError("manifold must have dimension at least 1");
  if (n > kMaxDim) {
    throw DimensionError("dimension " + std::to_string(n) + " exceeds the supported maximum " +
                         std::to_string(kMaxDim));
  }
  if (labels.empty()) labels = default_labels("q", n);
  if (static_cast<int>(labels.size()) != n) throw DimensionError("label count does not match dimension");
  ModelManifold m;
  m.kinds_ = std::move(kinds);
  m.labels_ = std::move(labels);
  m.base_dim_ = n;
  return m;
}

int ModelManifold::circle_count() const {
  int c = 0;
  for (auto k : kinds_) c += (k == CoordKind::Circle);
  return c;
}

int ModelManifold::index_of(const std::string& label) const {
  for (int i = 0; i < dim(); ++i) {
    if (labels_[i] == label) return i;
  }
  return -1;
}

ModelManifold ModelManifold::cotangent() const {
  if (bundle_ != Bundle::Plain) throw DimensionError("cotangent of a bundle is not modelled");
  std::vector<CoordKind> kinds = kinds_;
  kinds.insert(kinds.end(), dim(), CoordKind::Line);
  std::vector<std::string> labels = labels_;
  for (const auto& l : labels_) labels.push_back(l.rfind("q", 0) == 0 ? "p" + l.substr(1) : "p_" + l);
  ModelManifold m = from_kinds(std::move(kinds), std::move(labels));
  m.bundle_ = Bundle::Cotangent;
  m.base_dim_ = dim();
  return m;
}

ModelManifold ModelManifold::jet1() const {
  ModelManifold t = cotangent();
  std::vector<CoordKind> kinds = t.kinds_;
  kinds.push_back(CoordKind::Line);
  std::vector<std::string> labels = t.labels_;
  labels.push_back("z");
  ModelManifold m = from_kinds(std::move(kinds), std::move(labels));
  m.bundle_ = Bundle::Jet1;
  m.base_dim_ = dim();
  return m;
}

ModelManifold ModelManifold::product(const ModelManifold& other) const {
  if (bundle_ != Bundle::Plain || other.bundle_ != Bundle::Plain) {
    throw DimensionError("products are formed from plain manifolds only");
  }
  std::vector<CoordKind> kinds = kinds_;
  kinds.insert(kinds.end(), other.kinds_.begin(), other.kinds_.end());
  std::vector<std::string> labels = labels_;
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  return from_kinds(std::move(kinds), std::move(labels));
}

ModelManifold ModelManifold::with_labels(std::vector<std::string> labels) const {
  if (static_cast<int>(labels.size()) != dim()) throw DimensionError("label count does not match dimension");
  ModelManifold m = *this;
  m.labels_ = std::move(labels);
  return m;
}

ModelManifold ModelManifold::base() const {
  if (bundle_ == Bundle::Plain) return *this;
  std::vector<CoordKind> kinds(kinds_.begin(), kinds_.begin() + base_dim_);
  std::vector<std::string> labels(labels_.begin(), labels_.begin() + base_dim_);
  return from_kinds(std::move(kinds), std::move(labels));
}

Point ModelManifold::normalize(const Point& x) const {
  if (x.size() != dim()) throw DimensionError("point has wrong dimension for " + describe());
  Point y = x;
  for (int i = 0; i < dim(); ++i) {
    if (kinds_[i] != CoordKind::Circle) continue;
    double r = std::fmod(y(i), kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    y(i) = r;
  }
  return y;
}

Vec ModelManifold::displacement(const Point& a, const Point& b) const {
  Vec d = b - a;
  for (int i = 0; i < dim(); ++i) {
    if (kinds_[i] == CoordKind::Circle) d(i) = wrap_angle(d(i));
  }
  return d;
}

std::string ModelManifold::describe() const {
  std::ostringstream os;
  switch (bundle_) {
    case Bundle::Plain: os << "M"; break;
    case Bundle::Cotangent: os << "T*M"; break;
    case Bundle::Jet1: os << "J1M"; break;
  }
  os << "(";
  for (int i = 0; i < dim(); ++i) {
    os << (i ? "," : "") << labels_[i] << (kinds_[i] == CoordKind::Circle ? ":S1" : ":R");
  }
  os << ")";
  return os.str();
}

// --- ScalarField -----------------------------------------------------------

ScalarField::ScalarField(ModelManifold domain, Evaluator eval)
    : domain_(std::make_shared<const ModelManifold>(std::move(domain))),
      eval_(std::make_shared<const Evaluator>(std::move(eval))) {}

ScalarField ScalarField::constant(const ModelManifold& m, double c) {
  const int n = m.dim();
  return ScalarField(m, [c, n](const Point&) { return Jet2::constant(c, n); });
}

ScalarField ScalarField::coordinate(const ModelManifold& m, int index) {
  if (index < 0 || index >= m.dim()) throw DimensionError("coordinate index out of range");
  const int n = m.dim();
  return ScalarField(m, [index, n](const Point& x) { return Jet2::variable(x(index), index, n); });
}

ScalarField ScalarField::coordinate(const ModelManifold& m, const std::string& label) {
  const int i = m.index_of(label);
  if (i < 0) throw DimensionError("no coordinate labelled '" + label + "' on " + m.describe());
  return coordinate(m, i);
}

Jet2 ScalarField::eval(const Point& x) const {
  const Point y = domain_->normalize(x);
  try {
    return (*eval_)(y);
  } catch (const DomainError& e) {
    if (!e.point().empty()) throw;
    throw DomainError(e.what(), std::vector<double>(y.data(), y.data() + y.size()));
  }
}

namespace {

void require_same_domain(const ScalarField& a, const ScalarField& b) {
  if (a.domain() != b.domain()) {
    throw DimensionError("fields live on different manifolds: " + a.domain().describe() + " vs " +
                         b.domain().describe());
  }
}

template <class Op>
ScalarField binary(const ScalarField& a, const ScalarField& b, Op op) {
  require_same_domain(a, b);
  return ScalarField(a.domain(), [a, b, op](const Point& x) { return op(a.eval(x), b.eval(x)); });
}

template <class Op>
ScalarField unary(const ScalarField& a, Op op) {
  return ScalarField(a.domain(), [a, op](const Point& x) { return op(a.eval(x)); });
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return binary(a, b, [](const Jet2& u, const Jet2& v) { return u + v; });
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return binary(a, b, [](const Jet2& u, const Jet2& v) { return u - v; });
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return binary(a, b, [](const Jet2& u, const Jet2& v) { return u * v; });
}
ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  return binary(a, b, [](const Jet2& u, const Jet2& v) { return u / v; });
}
ScalarField operator-(const ScalarField& a) {
  return unary(a, [](const Jet2& u) { return -u; });
}
ScalarField operator+(const ScalarField& a, double s) {
  return unary(a, [s](const Jet2& u) { return u + s; });
}
ScalarField operator+(double s, const ScalarField& a) { return a + s; }
ScalarField operator-(const ScalarField& a, double s) { return a + (-s); }
ScalarField operator-(double s, const ScalarField& a) {
  return unary(a, [s](const Jet2& u) { return s - u; });
}
ScalarField operator*(const ScalarField& a, double s) {
  return unary(a, [s](const Jet2& u) { return u * s; });
}
ScalarField operator*(double s, const ScalarField& a) { return a * s; }
ScalarField operator/(const ScalarField& a, double s) { return a * (1.0 / s); }
ScalarField operator/(double s, const ScalarField& a) {
  return unary(a, [s](const Jet2& u) { return s / u; });
}
ScalarField exp(const ScalarField& a) {
  return unary(a, [](const Jet2& u) { return exp(u); });
}
ScalarField log(const ScalarField& a) {
  return unary(a, [](const Jet2& u) { return log(u); });
}
ScalarField sin(const ScalarField& a) {
  return unary(a, [](const Jet2& u) { return sin(u); });
}
ScalarField cos(const ScalarField& a) {
  return unary(a, [](const Jet2& u) { return cos(u); });
}
ScalarField sqrt(const ScalarField& a) {
  return unary(a, [](const Jet2& u) { return sqrt(u); });
}
ScalarField atan(const ScalarField& a) {
  return unary(a, [](const Jet2& u) { return atan(u); });
}
ScalarField pow(const ScalarField& a, double r) {
  return unary(a, [r](const Jet2& u) { return pow(u, r); });
}
ScalarField pow(const ScalarField& a, const ScalarField& b) {
  return binary(a, b, [](const Jet2& u, const Jet2& v) { return pow(u, v); });
}

// --- VectorField -----------------------------------------------------------

VectorField::VectorField(ModelManifold domain, Evaluator eval)
    : domain_(std::make_shared<const ModelManifold>(std::move(domain))),
      eval_(std::make_shared<const Evaluator>(std::move(eval))) {}

VectorField VectorField::from_components(const ModelManifold& m, std::vector<ScalarField> comps) {
  if (static_cast<int>(comps.size()) != m.dim()) {
    throw DimensionError("vector field needs one component per coordinate");
  }
  for (const auto& c : comps) {
    if (c.domain() != m) throw DimensionError("vector field component on the wrong manifold");
  }
  return VectorField(m, [comps](const Point& x) {
    std::vector<Jet2> out;
    out.reserve(comps.size());
    for (const auto& c : comps) out.push_back(c.eval(x));
    return out;
  });
}

std::vector<Jet2> VectorField::eval(const Point& x) const {
  auto out = (*eval_)(domain_->normalize(x));
  if (static_cast<int>(out.size()) != domain_->dim()) {
    throw DimensionError("vector field evaluator returned the wrong number of components");
  }
  return out;
}

Vec VectorField::values(const Point& x) const {
  auto comps = eval(x);
  Vec v(comps.size());
  for (size_t i = 0; i < comps.size(); ++i) v(i) = comps[i].value;
  return v;
}

}  // namespace lcs

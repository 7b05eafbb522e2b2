#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lcs/jet.hpp"

namespace lcs {

/// Points are coordinate vectors in the single global chart of a model
/// manifold; circle coordinates are kept in [0, 2pi).
using Point = Vec;

enum class CoordKind { Circle, Line };

/// Which bundle construction produced a manifold.
enum class Bundle { Plain, Cotangent, Jet1 };

/// Products of circles and lines, T^a x R^b, with one global chart. Cotangent
/// bundles and 1-jet spaces of such manifolds are again of this form: T*M has
/// coordinates (q, p) with all p of line type, J^1 M appends a line
/// coordinate z.
class ModelManifold {
 public:
  /// Circles first, then lines. Throws DimensionError for zero total
  /// dimension, a negative count, or more than kMaxDim coordinates.
  static ModelManifold make(int circle_count, int line_count);
  /// Arbitrary ordering of coordinate kinds.
  static ModelManifold from_kinds(std::vector<CoordKind> kinds, std::vector<std::string> labels = {});

  ModelManifold cotangent() const;
  ModelManifold jet1() const;
  ModelManifold product(const ModelManifold& other) const;
  ModelManifold with_labels(std::vector<std::string> labels) const;

  int dim() const { return static_cast<int>(kinds_.size()); }
  int circle_count() const;
  int line_count() const { return dim() - circle_count(); }
  CoordKind kind(int i) const { return kinds_[i]; }
  const std::vector<CoordKind>& kinds() const { return kinds_; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Index of the coordinate with the given label, or -1.
  int index_of(const std::string& label) const;

  Bundle bundle() const { return bundle_; }
  /// Dimension of the base for cotangent and jet bundles, dim() otherwise.
  int base_dim() const { return base_dim_; }
  /// The base manifold of a cotangent or jet bundle.
  ModelManifold base() const;

  /// Reduces circle coordinates into [0, 2pi). Idempotent.
  Point normalize(const Point& x) const;
  /// Coordinate difference b - a, taking the shortest arc on circles.
  Vec displacement(const Point& a, const Point& b) const;
  double distance(const Point& a, const Point& b) const { return displacement(a, b).norm(); }

  bool operator==(const ModelManifold& o) const {
    return kinds_ == o.kinds_ && bundle_ == o.bundle_ && base_dim_ == o.base_dim_;
  }
  bool operator!=(const ModelManifold& o) const { return !(*this == o); }

  std::string describe() const;

 private:
  std::vector<CoordKind> kinds_;
  std::vector<std::string> labels_;
  Bundle bundle_ = Bundle::Plain;
  int base_dim_ = 0;
};

/// Wraps an angle difference into (-pi, pi].
double wrap_angle(double a);

/// A smooth real function on a model manifold, evaluated as a Jet2.
///
/// The evaluator is pure; it always receives a normalized point, so values do
/// not depend on the representative of a circle coordinate. Fields are
/// immutable and cheap to copy (shared evaluator).
class ScalarField {
 public:
  using Evaluator = std::function<Jet2(const Point&)>;

  ScalarField() = default;
  ScalarField(ModelManifold domain, Evaluator eval);

  static ScalarField constant(const ModelManifold& m, double c);
  static ScalarField coordinate(const ModelManifold& m, int index);
  static ScalarField coordinate(const ModelManifold& m, const std::string& label);

  const ModelManifold& domain() const { return *domain_; }
  bool valid() const { return static_cast<bool>(eval_); }

  /// Jet at x. A DomainError raised inside the evaluator is re-thrown with the
  /// offending point attached.
  Jet2 eval(const Point& x) const;
  double value(const Point& x) const { return eval(x).value; }

 private:
  std::shared_ptr<const ModelManifold> domain_;
  std::shared_ptr<const Evaluator> eval_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);
ScalarField operator+(const ScalarField& a, double s);
ScalarField operator+(double s, const ScalarField& a);
ScalarField operator-(const ScalarField& a, double s);
ScalarField operator-(double s, const ScalarField& a);
ScalarField operator*(const ScalarField& a, double s);
ScalarField operator*(double s, const ScalarField& a);
ScalarField operator/(const ScalarField& a, double s);
ScalarField operator/(double s, const ScalarField& a);
ScalarField exp(const ScalarField& a);
ScalarField log(const ScalarField& a);
ScalarField sin(const ScalarField& a);
ScalarField cos(const ScalarField& a);
ScalarField sqrt(const ScalarField& a);
ScalarField atan(const ScalarField& a);
ScalarField pow(const ScalarField& a, double r);
ScalarField pow(const ScalarField& a, const ScalarField& b);

/// Jet of `field` at `x`; the operation form of ScalarField::eval.
inline Jet2 eval_jet(const ScalarField& field, const Point& x) { return field.eval(x); }

/// A vector field given by its components in the chart, each a jet.
class VectorField {
 public:
  using Evaluator = std::function<std::vector<Jet2>(const Point&)>;

  VectorField() = default;
  VectorField(ModelManifold domain, Evaluator eval);
  /// Component-wise from scalar fields; the count must equal dim.
  static VectorField from_components(const ModelManifold& m, std::vector<ScalarField> comps);

  const ModelManifold& domain() const { return *domain_; }
  std::vector<Jet2> eval(const Point& x) const;
  Vec values(const Point& x) const;

 private:
  std::shared_ptr<const ModelManifold> domain_;
  std::shared_ptr<const Evaluator> eval_;
};

}  // namespace lcs

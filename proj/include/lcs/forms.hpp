#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "lcs/chart.hpp"

namespace lcs {

/// Strictly increasing multi-index, stored as a bit set of coordinate indices.
using Mask = std::uint32_t;

/// All masks with `k` bits out of `n`, in increasing numeric order.
const std::vector<Mask>& masks(int n, int k);
/// Position of `m` in masks(n, popcount(m)), or -1.
int mask_position(int n, Mask m);
Mask mask_of(std::initializer_list<int> indices);

/// Marks values with no truncated derivatives (constant coefficients).
inline constexpr int kExactOrder = 99;

/// A k-form evaluated at a point: one jet per increasing multi-index.
///
/// `order` is how many derivatives of the coefficient jets are trustworthy.
/// Fields give order 2; every exterior derivative and every pullback through
/// a map's Jacobian spends one.
struct FormValue {
  int dim = 0;
  int degree = 0;
  int order = kExactOrder;
  std::vector<Jet2> coeff;

  static FormValue zero(int dim, int degree);

  /// Coefficient of dx_{i1}^...^dx_{ik} for an increasing multi-index.
  double at(Mask m) const;
  /// Antisymmetric access with arbitrary index order; repeated indices give 0.
  double component(const std::vector<int>& indices) const;
  Eigen::VectorXd values() const;
  /// Antisymmetric coefficient matrix of a 2-form (A_ij = omega(e_i, e_j)).
  Eigen::MatrixXd matrix() const;
  double max_abs() const;
};

FormValue operator+(const FormValue& a, const FormValue& b);
FormValue operator-(const FormValue& a, const FormValue& b);
FormValue operator*(double s, const FormValue& a);
FormValue wedge(const FormValue& a, const FormValue& b);
FormValue exterior_d(const FormValue& a);
FormValue contract(const std::vector<Jet2>& X, const FormValue& a);
double max_abs_diff(const FormValue& a, const FormValue& b);

/// Pfaffian of an antisymmetric matrix of even size.
double pfaffian(const Eigen::MatrixXd& A);

/// Chain rule for a jet in target coordinates composed with a map's jets.
Jet2 chain(const Jet2& outer, const std::vector<Jet2>& inner);

/// A smooth map between model manifolds; the evaluator returns one jet per
/// target coordinate, differentiated in source coordinates.
class SmoothMap {
 public:
  using Evaluator = std::function<std::vector<Jet2>(const Point&)>;

  SmoothMap() = default;
  SmoothMap(ModelManifold source, ModelManifold target, Evaluator eval, int order = 2);
  static SmoothMap from_fields(const ModelManifold& source, const ModelManifold& target,
                               std::vector<ScalarField> comps);
  static SmoothMap identity(const ModelManifold& m);

  const ModelManifold& source() const { return *source_; }
  const ModelManifold& target() const { return *target_; }
  int order() const { return order_; }

  std::vector<Jet2> eval(const Point& x) const;
  /// Image point, normalized on the target.
  Point apply(const Point& x) const;
  Eigen::MatrixXd jacobian(const Point& x) const;
  /// Component `i` as a scalar field on the source.
  ScalarField component(int i) const;

 private:
  std::shared_ptr<const ModelManifold> source_, target_;
  std::shared_ptr<const Evaluator> eval_;
  int order_ = 2;
};

/// outer after inner.
SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);
/// f after phi.
ScalarField compose(const ScalarField& f, const SmoothMap& phi);

struct ClosednessOptions {
  int samples = 1024;
  double tol = 1e-9;
  double line_radius = 4.0;
};

/// A differential form as an immutable expression tree.
class Form {
 public:
  struct Node;

  Form() = default;

  static Form zero(const ModelManifold& m, int degree);
  static Form constant(const ModelManifold& m, int degree, const std::map<Mask, double>& coeffs);
  static Form dx(const ModelManifold& m, int index);
  static Form scalar(const ScalarField& f);

  const ModelManifold& domain() const;
  int degree() const;
  bool valid() const { return static_cast<bool>(node_); }

  FormValue eval(const Point& x) const;

  const std::shared_ptr<const Node>& node() const { return node_; }
  explicit Form(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

 private:
  std::shared_ptr<const Node> node_;
};

Form operator+(const Form& a, const Form& b);
Form operator-(const Form& a, const Form& b);
Form operator-(const Form& a);
Form operator*(double s, const Form& a);
Form operator*(const ScalarField& f, const Form& a);
Form wedge(const Form& a, const Form& b);
Form wedge_power(const Form& a, int n);
Form d(const Form& a);
/// d_beta alpha = d alpha - beta ^ alpha. beta must have degree 1 and is
/// checked for closedness on Halton samples; failure throws ValidationError
/// with the worst point and residual.
Form lichnerowicz_d(const Form& alpha, const Form& beta, const ClosednessOptions& opt = {});
Form pullback(const SmoothMap& phi, const Form& alpha);
Form interior_product(const VectorField& X, const Form& alpha);

/// Worst |d beta| coefficient over samples; throws ValidationError above tol.
void validate_closed(const Form& beta, const ClosednessOptions& opt = {});

struct NondegeneracyReport {
  std::vector<double> pfaffian;
  std::vector<double> abs_det;
  double min_abs_det = 0.0;
  Point argmin;
  double tol = 0.0;
  bool nondegenerate = false;
};

/// Pfaffian and |det| of the coefficient matrix at each sample. The flag is
/// set iff the minimum |det| exceeds tol.
NondegeneracyReport check_nondegenerate(const Form& omega, const std::vector<Point>& samples, double tol);

}  // namespace lcs

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcs/structures.hpp"

namespace lcs {

/// A candidate Lagrangian i: L -> T*M. The map's first n components are base
/// coordinates, the last n fiber coordinates.
struct ParametricEmbedding {
  std::string name;
  ModelManifold source;
  CotangentLcsStructure target;
  SmoothMap map;
  std::optional<ScalarField> declared_primitive;
};

/// Checks dimensions and the map's endpoints.
ParametricEmbedding make_embedding(std::string name, const CotangentLcsStructure& s, SmoothMap map,
                                   std::optional<ScalarField> primitive = {});

/// Pulled-back lambda and beta at a parameter, with their first derivatives:
/// c_i = (i* lambda)_i, b_i = (i* beta)_i, dc(i, j) = d_j c_i.
struct PulledForms {
  Vec c, b;
  Mat dc, db;
  Point image;
};
PulledForms pulled_forms(const ParametricEmbedding& e, const Point& u);

/// Parameters of a tensor grid over a compact source (all circle coordinates).
std::vector<Point> parameter_grid(const ModelManifold& source, int per_axis);

struct LagrangianReport {
  double residual_sup = 0.0;
  Point worst;
  double min_singular = 0.0;
  Point worst_immersion;
  bool immersion_ok = false;
  bool pass = false;
  double tol = 1e-9;
};

/// sup |i* d_beta lambda| over samples, plus the immersion check.
LagrangianReport verify_lagrangian(const ParametricEmbedding& e, const std::vector<Point>& samples,
                                   double tol = 1e-9, double rank_tol = 1e-8);

struct PrimitiveOptions {
  int steps_per_loop = 2048;
  /// Table nodes per circle coordinate; 0 picks 128, 128, 16, 8 for dim 1..4.
  int nodes_per_axis = 0;
  double tol = 1e-8;
  /// Pins f at the base point when no loop has nontrivial holonomy; otherwise
  /// the declared primitive or 0 is used.
  std::optional<double> base_value;
  /// Nodes per axis of the grid on which a declared primitive is checked.
  int check_grid = 32;
};

struct ExactnessCertificate {
  double residual_sup = 0.0;
  double path_discrepancy = 0.0;
  double declared_residual = 0.0;
  bool has_declared = false;
  std::vector<double> holonomy_defects;
  std::vector<double> multiplicative_holonomy;
  std::vector<double> beta_periods;
  int worst_loop = -1;
  std::optional<ScalarField> solved_primitive;
  bool unique_primitive = false;
  double base_value = 0.0;
  Point base_point;
  double tol = 1e-8;
  bool valid = false;
};

/// Integrates f' = (i* lambda)(g') + f (i* beta)(g') along comb paths on a
/// torus source and tabulates the solution; see PrimitiveOptions.
ExactnessCertificate solve_primitive(const ParametricEmbedding& e, const Point& base_point,
                                     const PrimitiveOptions& opt = {});

/// Fiber translation p -> p + c eta(q). When eta is the structure's Lee form
/// the declared primitive f becomes f - c.
ParametricEmbedding translate_by_form(const ParametricEmbedding& e, const Form& eta, double c);

/// x -> (x, df - f beta). Third derivatives of f, needed for the map's
/// Hessian, come from central differences of the jet Hessian.
ParametricEmbedding beta_graph(const ScalarField& f, const CotangentLcsStructure& s);
ParametricEmbedding zero_section(const CotangentLcsStructure& s);

/// Example torus embeddings in T*T^2 with beta = dq2.
ParametricEmbedding example_torus_1();
ParametricEmbedding example_torus_2();
ParametricEmbedding example_planted_tangency();

/// A map Lambda -> J^1 M (coordinates q, p, z).
struct LegendrianEmbedding {
  std::string name;
  ModelManifold source;
  ModelManifold jet_space;
  SmoothMap map;
};

/// j^1(F) for F on M: x -> (x, dF, F).
LegendrianEmbedding jet_graph(const ScalarField& F);

/// sup |i*(dz - lambda_M)| over samples.
double legendrian_residual(const LegendrianEmbedding& l, const std::vector<Point>& samples);

/// Lambda x Q -> T*(M x Q), (l, x) -> (q(l), x, p(l), -z(l) beta_Q(x)), with
/// declared primitive z. Throws ValidationError when Lambda is not Legendrian.
ParametricEmbedding lift_legendrian(const LegendrianEmbedding& l, const Form& q_form, double tol = 1e-9,
                                    int check_samples = 256);

/// l -> (i1(l), i2(l) + f(l) beta): pulls lambda back to df.
SmoothMap symplectization_immersion(const ParametricEmbedding& e, const ExactnessCertificate& cert);

struct ContactLiftReport {
  double max_difference = 0.0;
  double min_abs_volume = 0.0;
  bool equal = false;
  bool nonvanishing = false;
};

/// alpha' = alpha + z beta on J^1 M versus alpha = dz - lambda_M: compares the
/// top forms alpha'^(d alpha')^n and alpha^(d alpha)^n on samples.
ContactLiftReport contact_lift_check(const ModelManifold& jet_space, const Form& base_beta,
                                     const std::vector<Point>& samples, double tol = 1e-9);

/// c with f0 + c = e^{t0} (ft0 + c); empty when t0 = 0.
std::optional<double> cobordism_gluing_constant(double f0, double ft0, double t0);

// --- generating functions --------------------------------------------------

struct GeneratingOptions {
  /// F must be quadratic in xi for |xi| >= compact_radius.
  double compact_radius = 4.0;
  int shell_samples = 256;
  double tol = 1e-6;
  bool require_quadratic = true;
};

/// G(q, theta, xi) = F(q, xi) on M x S^1 x R^k; F lives on M x R^k with the
/// first base_dim coordinates on M.
ScalarField lift_generating_function(const ScalarField& F, int base_dim, const GeneratingOptions& opt = {});

/// Worst deviation of the xi-Hessian of F from its value at a reference shell
/// point, over the shell compact_radius <= |xi| <= 2 compact_radius.
double quadratic_at_infinity_defect(const ScalarField& F, int base_dim, const GeneratingOptions& opt = {});

struct GeneratedPoint {
  Point x;   // base point
  Vec xi;    // fiber-critical xi
  Vec p;     // d_x G - G beta
  double value = 0.0;
};

/// Fiber-critical points over a base point: seeds on a uniform xi grid in
/// [-xi_radius, xi_radius]^k refined by Newton on D_xi G = 0, deduplicated.
std::vector<GeneratedPoint> fiber_critical_points(const ScalarField& G, int base_dim, const Point& x,
                                                  const Vec& beta, double xi_radius = 4.0, int seeds_per_axis = 64);

// --- genericity ------------------------------------------------------------

struct GenericityReport {
  std::vector<Point> intersections;      // parameters with p = 0
  double min_transversality = 0.0;       // smallest sigma of the fiber block of TL
  bool degenerate_input = false;         // L meets the 0-section in an open set
  bool transverse = false;
  std::vector<Point> vertical_tangencies;  // parameters where dq drops rank
  double tangency_margin = 0.0;            // min |grad det(dq)| on the locus
  double min_distance_to_zero = 0.0;       // min |p| over the locus
};

GenericityReport genericity_check(const ParametricEmbedding& e, int seeds_per_axis = 32, double tol = 1e-8);

}  // namespace lcs

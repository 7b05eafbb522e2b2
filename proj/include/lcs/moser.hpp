#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcs/chords.hpp"
#include "lcs/lagrangian.hpp"

namespace lcs {

/// Deformation of (T*M, d(lambda/g)) back to (T*M, d lambda) through
/// lambda_t = g_t lambda with g_t = t/g + 1 - t. g must equal 1 for |p| >= radius.
struct MoserProblem {
  CotangentLcsStructure structure;
  ScalarField g;
  double radius = 4.0;
};

/// g = c on |p| <= r1, 1 on |p| >= r2, log-quintic in ln|p| between.
ScalarField constant_ball_factor(const ModelManifold& cotangent, double c, double r1, double r2);

/// Coefficient a with X_t = a Z: a = (1/g - 1) / (g_t + dg_t(Z)). Throws
/// PreconditionError where the denominator is not positive.
double moser_rate(const MoserProblem& P, double t, const Point& x);
double moser_denominator(const MoserProblem& P, double t, const Point& x);

/// X_t = a Z as a vector field; the denominator is checked on a grid first.
VectorField moser_vector_field(const MoserProblem& P, double t, int grid_per_axis = 16);

struct MoserInvariantReport {
  double max_dlng_z = 0.0;     // sup d ln g(Z); the denominator at t = 1 needs < 1
  double max_dlninvg_z = 0.0;  // sup d ln(1/g)(Z)
  double min_denominator = 0.0;
  Point worst;
  double worst_t = 0.0;
  std::vector<double> times;
  std::vector<double> min_abs_pfaffian;  // of d lambda_t, per time
  bool pfaffian_sign_constant = false;
  bool denominator_ok = false;
  bool inverse_bound_ok = false;
  bool pass = false;
};
MoserInvariantReport moser_invariants(const MoserProblem& P, const std::vector<Point>& samples);
/// Grid over the base times the fiber ball of radius 1.25 * P.radius.
std::vector<Point> moser_grid(const MoserProblem& P, int per_axis);

enum class FlowMethod { Rk4, Euler };

struct FlowOptions {
  double step = 1e-3;
  FlowMethod method = FlowMethod::Rk4;
  /// Relative Richardson error allowed per seed before the step is halved.
  double richardson_tol = 1e-9;
  int max_halvings = 10;
  bool richardson = true;
  /// Integrates the schedule over [tau0, tau1] of [0, 1].
  double tau0 = 0.0, tau1 = 1.0;
};

struct FlowResult {
  std::vector<Point> seeds;
  std::vector<Point> images;
  double max_fiber_drift = 0.0;
  double max_displacement = 0.0;
  double richardson_error = 0.0;
  double step = 0.0;  // smallest step any seed needed
  FlowOptions options;
};

/// Time-1 map psi of the reversed schedule d rho/d tau = rho a(1 - tau, rho v),
/// so that psi* lambda = lambda / g and psi*(d lambda) = d(lambda/g).
/// Only the fiber radius moves. Throws ConvergenceError naming the seed when
/// the step collapses.
FlowResult integrate_flow(const MoserProblem& P, const std::vector<Point>& seeds, const FlowOptions& opt = {});
/// One seed without the Richardson loop.
Point flow_point(const MoserProblem& P, const Point& x, const FlowOptions& opt);

struct PullbackReport {
  double residual = 0.0;
  Point worst;
  int samples = 0;
  double threshold = 1e-4;
  bool pass = false;
};
/// sup |psi*(d lambda) - d(lambda/g)| with a central-difference Jacobian of the
/// flow (h = 1e-5), re-running the flow with R.options.
PullbackReport verify_conformal_pullback(const MoserProblem& P, const FlowResult& R,
                                         const std::vector<Point>& samples);

struct StraightenOptions {
  FlowOptions flow = [] {
    FlowOptions o;
    o.step = 2e-3;
    o.richardson = false;
    return o;
  }();
  PrimitiveOptions primitive = [] {
    PrimitiveOptions o;
    o.steps_per_loop = 256;
    o.nodes_per_axis = 32;
    return o;
  }();
  int check_samples = 64;
  double closed_tol = 1e-8;
  double holonomy_tol = 1e-6;
  MvtOptions mvt{};
  int bound_grid = 16;
  /// g is taken to be 1 beyond this fiber radius.
  double radius = 16.0;
  /// Without an explicit eta', pick constant coefficients that cancel the
  /// lambda-periods of the image over the source loops.
  bool auto_eta = false;
};

struct StraightenResult {
  ParametricEmbedding image;
  ExactnessCertificate certificate;
  double closedness_residual = 0.0;
  double holonomy = 0.0;
  double radial_bound = 0.0;  // sup d ln g(Z) seen on the check grid
  Vec loop_periods;            // of the image before eta'
  std::optional<Vec> eta_coefficients;
  bool pass = false;
};

/// psi(i(L)) translated by eta_prime, as a Lagrangian of (T*M, d lambda).
/// Refuses obstructed chords and factors with d ln g(Z) >= 1.
StraightenResult straighten_lagrangian(const ParametricEmbedding& e, const ExactnessCertificate& c,
                                       const ScalarField& g, const std::optional<Form>& eta_prime = {},
                                       const StraightenOptions& opt = {});

struct DegreeReport {
  int degree = 0;
  Point regular_value;
  std::vector<Point> preimages;
  std::vector<int> signs;
  int attempts = 0;
};
/// Signed count of preimages of a sampled regular value of pi o i.
DegreeReport projection_degree(const ParametricEmbedding& e, int seeds_per_axis = 32);

std::string flow_csv(const FlowResult& r);

}  // namespace lcs

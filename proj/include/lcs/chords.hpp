#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcs/lagrangian.hpp"

namespace lcs {

struct ChordOptions {
  int grid = 32;                 // seeds per parameter axis
  double min_fiber_norm = 1e-3;  // covectors shorter than this are ignored
  double band = 1e-3;            // chords with |ln t| below this are dropped
  double angle_tol = 1e-6;
  double dedup = 1e-4;
  /// Slack for the sign tests on defect and ratio, which sit exactly on the
  /// boundary in the interesting examples.
  double classify_tol = 1e-8;
};

/// A Liouville trajectory from i1(start) to i2(end) = (q, t p).
struct LiouvilleChord {
  Point start, end;  // parameters on the two sources
  Point base;
  Vec start_fiber, end_fiber;
  double t = 1.0;
  double length = 0.0;  // ln t
  int sign = 1;         // +1 when t > 1
  double f_start = 0.0, f_end = 0.0;
  double defect = 0.0;  // f2(end) - t f1(start)
  std::optional<double> mvt_ratio;
  bool positive_values = false;
  bool essential = false;
  int family = -1;  // -1 for an isolated chord
};

struct UnresolvedSeed {
  Point start, end;
  double residual = 0.0;
};

struct ChordScan {
  std::vector<LiouvilleChord> chords;
  /// One chord index per family and per isolated chord.
  std::vector<int> representatives;
  int family_count = 0;
  std::vector<UnresolvedSeed> unresolved;
  long seeds = 0;
  long dropped_band = 0;         // converged to t near 1
  long dropped_orientation = 0;  // antiparallel covectors
  long dropped_small = 0;        // covector below min_fiber_norm
  double link_radius = 0.0;
  ChordOptions options;
};

/// Fills f values, defect, ratio and the essential flag.
LiouvilleChord classify_chord(LiouvilleChord c, const ScalarField& f1, const ScalarField& f2, double tol = 1e-8);

/// Chords from L1 to L2. Both certificates must be valid and carry solved
/// primitives, which classify every chord found.
ChordScan scan_chords(const ParametricEmbedding& e1, const ExactnessCertificate& c1, const ParametricEmbedding& e2,
                      const ExactnessCertificate& c2, const ChordOptions& opt = {});
ChordScan scan_chords(const ParametricEmbedding& e, const ExactnessCertificate& c, const ChordOptions& opt = {});

struct MvtOptions {
  double margin = 0.0;
  int positivity_grid = 64;
  ChordOptions chords;
};

struct MvtReport {
  ChordScan scan;
  bool obstructed = false;
  std::optional<double> max_ratio, min_ratio;
  int worst = -1;  // chord with the largest ratio
  double min_primitive = 0.0;
  double margin = 0.0;
};

/// Self-scan plus classification; obstructed iff some ratio >= 1 - margin.
/// Throws PreconditionError when the primitive is not positive.
MvtReport mvt_obstruction_report(const ParametricEmbedding& e, const ExactnessCertificate& c,
                                 const MvtOptions& opt = {});

/// Residuals of (alpha/s)(R) = 1 and i_R d(alpha/s) = 0 on J^1 M, with
/// R = p d_p + s d_s, at Halton points with s in [s_lo, s_hi].
struct ReebIdentityReport {
  double evaluation_defect = 0.0;
  double contraction_defect = 0.0;
  int samples = 0;
};
ReebIdentityReport reeb_identity_check(const ModelManifold& jet_space, int samples = 100, double s_lo = 0.5,
                                       double s_hi = 4.0);

struct ReebChord {
  int from = 0, to = 0;  // component indices
  Point start, end;
  double time = 0.0;  // R-flow time, e^time = Liouville scale
  int family = -1;
};

struct ReebOptions {
  double epsilon = 1e-3;
  int identity_samples = 100;
  ChordOptions chords;
};

struct ReebReport {
  ReebIdentityReport identities;
  std::vector<ReebChord> reeb;
  std::vector<LiouvilleChord> liouville;  // positive chords of the lifts
  std::vector<std::pair<int, int>> liouville_pairs;  // component pair per chord
  int reeb_families = 0;
  int liouville_families = 0;
  double closed_form_defect = 0.0;  // worst mismatch against the R-flow
  bool one_to_one = false;
  bool all_essential = false;
  bool pass = false;
};

/// Reeb chords of a union of Legendrians for alpha/s, matched family by
/// family with the positive Liouville chords of the lifts L x S^1 (lift form
/// d theta). Throws PreconditionError when s < epsilon on a component.
ReebReport reeb_correspondence(const std::vector<LegendrianEmbedding>& components, const ReebOptions& opt = {});

std::string chords_csv(const ChordScan& scan);
std::string chords_json(const ChordScan& scan);

}  // namespace lcs

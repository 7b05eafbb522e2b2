#pragma once

#include <cstdint>
#include <vector>

#include "lcs/chart.hpp"

namespace lcs {

/// Van der Corput radical inverse of `index` in the given base.
double radical_inverse(std::uint64_t index, int base);

struct SampleOptions {
  int count = 4096;
  /// Line coordinates are drawn from [-line_radius, line_radius].
  double line_radius = 4.0;
  /// Shifts the Halton index so different seeds give disjoint point sets.
  std::uint64_t seed = 0;
};

/// Deterministic low-discrepancy points of a model manifold: Halton sequence,
/// one prime base per coordinate, circles scaled to [0, 2pi).
std::vector<Point> halton_points(const ModelManifold& m, const SampleOptions& opt);

/// Halton points over a box: coordinate i in [lo(i), hi(i)].
std::vector<Vec> halton_box(const Vec& lo, const Vec& hi, int count, std::uint64_t seed = 0);

/// Tensor grid with `per_axis` nodes per coordinate: circles at 2pi k/n, lines
/// uniform over [-line_radius, line_radius] (endpoints included).
std::vector<Point> tensor_grid(const ModelManifold& m, int per_axis, double line_radius);

}  // namespace lcs

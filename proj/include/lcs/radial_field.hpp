#pragma once

#include <string>
#include <vector>

#include "lcs/chart.hpp"

namespace lcs {

struct RadialGridSpec {
  int base_per_axis = 64;
  /// Directions per base point for fibers of dimension >= 2; 1-D fibers
  /// always use {+1, -1}.
  int directions = 256;
  int radii = 128;
  double r_min = 1e-3;
  double r_max = 16.0;
};

/// Positive values on base grid x unit fiber directions x log-spaced radii,
/// a discretized function on T*M minus the 0-section.
class RadialField {
 public:
  RadialField() = default;
  /// `base` must be compact (circles only).
  RadialField(const ModelManifold& base, const RadialGridSpec& spec, double fill = 1.0);

  const ModelManifold& base() const { return base_; }
  const RadialGridSpec& spec() const { return spec_; }
  int base_count() const { return static_cast<int>(base_points_.size()); }
  int direction_count() const { return static_cast<int>(directions_.size()); }
  int radius_count() const { return static_cast<int>(radii_.size()); }
  long ray_count() const { return static_cast<long>(base_count()) * direction_count(); }
  const Point& base_point(int b) const { return base_points_[b]; }
  const Vec& direction(int d) const { return directions_[d]; }
  double radius(int r) const { return radii_[r]; }
  const std::vector<double>& radii() const { return radii_; }
  /// log(r_{i+1} / r_i).
  double log_step() const { return log_step_; }

  long index(int b, int d, int r) const { return (static_cast<long>(b) * direction_count() + d) * radius_count() + r; }
  double& at(int b, int d, int r) { return values_[index(b, d, r)]; }
  double at(int b, int d, int r) const { return values_[index(b, d, r)]; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  /// The T*M point (q_b, r dir_d).
  Point point(int b, int d, int r) const;
  /// Centered difference of ln F against ln r (one-sided at the ends), i.e.
  /// d ln F(Z) at the node.
  double log_slope(int b, int d, int r) const;
  /// Base index offsets per axis, for stencils: neighbour of b shifted by
  /// `delta` along `axis` (periodic).
  int base_neighbor(int b, int axis, int delta) const;
  int per_axis() const { return spec_.base_per_axis; }

  /// Index of the first radius >= r (radius_count() if none).
  int radius_index_at_least(double r) const;

  std::string to_csv() const;
  std::string to_json() const;

 private:
  ModelManifold base_;
  RadialGridSpec spec_;
  std::vector<Point> base_points_;
  std::vector<Vec> directions_;
  std::vector<double> radii_;
  double log_step_ = 0.0;
  std::vector<double> values_;
};

/// Unit covectors: {+1, -1} for n = 1, `count` equally spaced angles for
/// n = 2, a Fibonacci sphere for n >= 3.
std::vector<Vec> direction_set(int n, int count);

}  // namespace lcs

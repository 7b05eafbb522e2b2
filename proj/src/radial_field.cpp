#include "lcs/radial_field.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <iomanip>

#include <json.hpp>

#include "lcs/error.hpp"
#include "lcs/sampling.hpp"

namespace lcs {

std::vector<Vec> direction_set(int n, int count) {
  std::vector<Vec> out;
  if (n == 1) {
    out.push_back(Vec::Constant(1, 1.0));
    out.push_back(Vec::Constant(1, -1.0));
    return out;
  }
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * std::numbers::pi * i / count;
      Vec v(2);
      v << std::cos(a), std::sin(a);
      out.push_back(v);
    }
    return out;
  }
  // Fibonacci points on S^2, padded with independent Halton angles for the
  // remaining coordinates when n > 3; normalized at the end.
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    Vec v = Vec::Zero(n);
    const double z = 1.0 - 2.0 * (i + 0.5) / count;
    const double rho = std::sqrt(1.0 - z * z);
    v(0) = rho * std::cos(golden * i);
    v(1) = rho * std::sin(golden * i);
    v(2) = z;
    for (int j = 3; j < n; ++j) v(j) = 2.0 * radical_inverse(i + 1, j == 3 ? 7 : 11) - 1.0;
    out.push_back(v.normalized());
  }
  return out;
}

RadialField::RadialField(const ModelManifold& base, const RadialGridSpec& spec, double fill)
    : base_(base), spec_(spec) {
  if (base.line_count() > 0) throw DimensionError("radial fields need a compact base");
  if (spec.radii < 3 || spec.r_min <= 0.0 || spec.r_max <= spec.r_min)
    throw DimensionError("bad radial grid");
  base_points_ = tensor_grid(base, spec.base_per_axis, 0.0);
  directions_ = direction_set(base.dim(), spec.directions);
  log_step_ = std::log(spec.r_max / spec.r_min) / (spec.radii - 1);
  for (int r = 0; r < spec.radii; ++r) radii_.push_back(spec.r_min * std::exp(r * log_step_));
  radii_.back() = spec.r_max;
  values_.assign(static_cast<size_t>(ray_count()) * spec.radii, fill);
}

Point RadialField::point(int b, int d, int r) const {
  const int n = base_.dim();
  Point x(2 * n);
  x.head(n) = base_points_[b];
  x.tail(n) = radii_[r] * directions_[d];
  return x;
}

double RadialField::log_slope(int b, int d, int r) const {
  const int R = radius_count();
  const int lo = r == 0 ? 0 : r - 1;
  const int hi = r == R - 1 ? R - 1 : r + 1;
  return (std::log(at(b, d, hi)) - std::log(at(b, d, lo))) / (std::log(radii_[hi]) - std::log(radii_[lo]));
}

int RadialField::base_neighbor(int b, int axis, int delta) const {
  // tensor_grid orders the last coordinate fastest.
  const int N = spec_.base_per_axis;
  const int k = base_.dim();
  long stride = 1;
  for (int j = k - 1; j > axis; --j) stride *= N;
  const int idx = static_cast<int>((b / stride) % N);
  const int moved = ((idx + delta) % N + N) % N;
  return static_cast<int>(b + (moved - idx) * stride);
}

int RadialField::radius_index_at_least(double r) const {
  for (int i = 0; i < radius_count(); ++i)
    if (radii_[i] >= r * (1.0 - 1e-12)) return i;
  return radius_count();
}

std::string RadialField::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(17);
  const int n = base_.dim();
  for (int i = 0; i < n; ++i) out << "q" << i << ',';
  for (int i = 0; i < n; ++i) out << "dir" << i << ',';
  out << "r,value\n";
  for (int b = 0; b < base_count(); ++b)
    for (int d = 0; d < direction_count(); ++d)
      for (int r = 0; r < radius_count(); ++r) {
        for (int i = 0; i < n; ++i) out << base_points_[b](i) << ',';
        for (int i = 0; i < n; ++i) out << directions_[d](i) << ',';
        out << radii_[r] << ',' << at(b, d, r) << '\n';
      }
  return out.str();
}

std::string RadialField::to_json() const {
  using nlohmann::json;
  json bases = json::array(), dirs = json::array();
  for (const auto& p : base_points_) bases.push_back(std::vector<double>(p.data(), p.data() + p.size()));
  for (const auto& v : directions_) dirs.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  json j = {{"base_points", bases},
            {"directions", dirs},
            {"radii", radii_},
            {"layout", "base-major, then direction, then radius"},
            {"values", values_}};
  return j.dump();
}

}  // namespace lcs

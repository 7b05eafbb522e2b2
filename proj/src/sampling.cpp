#include "lcs/sampling.hpp"

#include <cmath>
#include <numbers>

#include "lcs/error.hpp"

namespace lcs {

namespace {
constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
// Large stride between seeds; the sequence is infinite so sets never overlap
// for realistic counts.
constexpr std::uint64_t kSeedStride = 1u << 20;
}  // namespace

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

std::vector<Point> halton_points(const ModelManifold& m, const SampleOptions& opt) {
  const int n = m.dim();
  Vec lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    if (m.kind(i) == CoordKind::Circle) {
      lo(i) = 0.0;
      hi(i) = 2.0 * std::numbers::pi;
    } else {
      lo(i) = -opt.line_radius;
      hi(i) = opt.line_radius;
    }
  }
  auto pts = halton_box(lo, hi, opt.count, opt.seed);
  for (auto& p : pts) p = m.normalize(p);
  return pts;
}

std::vector<Vec> halton_box(const Vec& lo, const Vec& hi, int count, std::uint64_t seed) {
  const int n = static_cast<int>(lo.size());
  if (n > static_cast<int>(std::size(kPrimes))) throw DimensionError("too many coordinates for Halton");
  std::vector<Vec> out(count, Vec(n));
  const std::uint64_t start = 1 + seed * kSeedStride;
  for (int k = 0; k < count; ++k) {
    for (int i = 0; i < n; ++i) {
      out[k](i) = lo(i) + (hi(i) - lo(i)) * radical_inverse(start + k, kPrimes[i]);
    }
  }
  return out;
}

std::vector<Point> tensor_grid(const ModelManifold& m, int per_axis, double line_radius) {
  const int n = m.dim();
  long total = 1;
  for (int i = 0; i < n; ++i) total *= per_axis;
  std::vector<Point> out;
  out.reserve(total);
  std::vector<int> idx(n, 0);
  for (long k = 0; k < total; ++k) {
    Point p(n);
    for (int i = 0; i < n; ++i) {
      if (m.kind(i) == CoordKind::Circle) {
        p(i) = 2.0 * std::numbers::pi * idx[i] / per_axis;
      } else {
        p(i) = per_axis == 1 ? 0.0 : -line_radius + 2.0 * line_radius * idx[i] / (per_axis - 1);
      }
    }
    out.push_back(p);
    for (int i = n - 1; i >= 0; --i) {
      if (++idx[i] < per_axis) break;
      idx[i] = 0;
    }
  }
  return out;
}

}  // namespace lcs

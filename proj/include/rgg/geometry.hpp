#pragma once

// Coordinates on the unit torus [0,1)^d, wrapped l_p distances, point sets
// (random samples and regular lattices) and the unit-ball volume constant.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace rgg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Dimension and l_p exponent. p is a real >= 1 or kInfinity.
class MetricSpec {
 public:
  MetricSpec(int d, double p);

  static MetricSpec linf(int d) { return MetricSpec(d, kInfinity); }

  int d() const noexcept { return d_; }
  double p() const noexcept { return p_; }
  bool is_inf() const noexcept { return p_ == kInfinity; }

  /// d^{1/p}, defined as 1 for p = infinity.
  double d_root() const;

 private:
  int d_;
  double p_;
};

/// Parses "inf"/"infinity" or a real >= 1.
double parse_p(const char* text);

enum class PointKind { Sample, Grid };

/// n points of dimension d stored row-major; immutable after construction.
class PointSet {
 public:
  PointSet(int d, std::vector<double> coords, PointKind kind);

  int d() const noexcept { return d_; }
  std::size_t size() const noexcept { return coords_.size() / static_cast<std::size_t>(d_); }
  PointKind kind() const noexcept { return kind_; }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }
  std::span<const double> coords() const noexcept { return coords_; }

 private:
  int d_;
  std::vector<double> coords_;
  PointKind kind_;
};

/// min(|a-b|, 1-|a-b|) for a, b in [0,1).
double torus_coordinate_delta(double a, double b) noexcept;

/// l_p aggregate of the wrapped per-coordinate deltas. Throws on a length
/// mismatch with m.d().
double torus_distance(std::span<const double> x, std::span<const double> y, const MetricSpec& m);

/// Same as torus_distance without the length check; hot loops only.
double torus_distance_unchecked(const double* x, const double* y, const MetricSpec& m) noexcept;

/// Volume of the d-dimensional unit l_2 ball, pi^{d/2} / Gamma(d/2 + 1).
double ball_volume_theta(int d);

PointSet sample_uniform(std::size_t n, int d, std::uint64_t seed);

/// The lattice {0, 1/N, ..., (N-1)/N}^d in row-major order (first coordinate
/// varies slowest).
PointSet grid_points(std::size_t side, int d);

/// N^d with overflow detection.
std::size_t checked_power(std::size_t side, int d);

}  // namespace rgg

#include "rgg/geometry.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <string>

#include "rgg/error.hpp"
#include "rgg/random.hpp"

namespace rgg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::SizeOverflow: return "SIZE_OVERFLOW";
    case ErrorCode::NotSymmetric: return "NOT_SYMMETRIC";
    case ErrorCode::NotPermutation: return "NOT_PERMUTATION";
    case ErrorCode::IterationFailure: return "ITERATION_FAILURE";
    case ErrorCode::AnalyticRangeExceeded: return "ANALYTIC_RANGE_EXCEEDED";
    case ErrorCode::ClosedFormRequiresLinf: return "CLOSED_FORM_REQUIRES_LINF";
    case ErrorCode::InternalConsistency: return "INTERNAL_CONSISTENCY";
    case ErrorCode::RadiusTooSmall: return "RADIUS_TOO_SMALL";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

MetricSpec::MetricSpec(int d, double p) : d_(d), p_(p) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "metric exponent must be >= 1 or inf");
}

double MetricSpec::d_root() const {
  return is_inf() ? 1.0 : std::pow(static_cast<double>(d_), 1.0 / p_);
}

double parse_p(const char* text) {
  std::string s(text);
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (s == "inf" || s == "infinity") return kInfinity;
  char* end = nullptr;
  const double p = std::strtod(text, &end);
  if (end == text || *end != '\0' || !(p >= 1.0))
    throw Error(ErrorCode::InvalidArgument, "metric exponent must be a number >= 1 or 'inf', got '" + s + "'");
  return p;
}

PointSet::PointSet(int d, std::vector<double> coords, PointKind kind)
    : d_(d), coords_(std::move(coords)), kind_(kind) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (coords_.size() % static_cast<std::size_t>(d) != 0)
    throw Error(ErrorCode::DimensionMismatch, "coordinate count is not a multiple of d");
  for (double c : coords_)
    if (!(c >= 0.0 && c < 1.0)) throw Error(ErrorCode::InvalidArgument, "coordinate outside [0,1)");
}

double torus_coordinate_delta(double a, double b) noexcept {
  const double delta = std::fabs(a - b);
  return delta > 0.5 ? 1.0 - delta : delta;
}

double torus_distance_unchecked(const double* x, const double* y, const MetricSpec& m) noexcept {
  const int d = m.d();
  if (d == 1) return torus_coordinate_delta(x[0], y[0]);
  if (m.is_inf()) {
    double best = 0.0;
    for (int k = 0; k < d; ++k) best = std::fmax(best, torus_coordinate_delta(x[k], y[k]));
    return best;
  }
  const double p = m.p();
  double acc = 0.0;
  if (p == 1.0) {
    for (int k = 0; k < d; ++k) acc += torus_coordinate_delta(x[k], y[k]);
    return acc;
  }
  if (p == 2.0) {
    for (int k = 0; k < d; ++k) {
      const double delta = torus_coordinate_delta(x[k], y[k]);
      acc += delta * delta;
    }
    return std::sqrt(acc);
  }
  for (int k = 0; k < d; ++k) acc += std::pow(torus_coordinate_delta(x[k], y[k]), p);
  return std::pow(acc, 1.0 / p);
}

double torus_distance(std::span<const double> x, std::span<const double> y, const MetricSpec& m) {
  const auto d = static_cast<std::size_t>(m.d());
  if (x.size() != d || y.size() != d)
    throw Error(ErrorCode::DimensionMismatch, "point length differs from metric dimension");
  return torus_distance_unchecked(x.data(), y.data(), m);
}

double ball_volume_theta(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  // Gamma(d/2 + 1): (d/2)! for even d; sqrt(pi) * prod_{j=0}^{(d-1)/2} (j + 1/2) for odd d.
  double gamma = 1.0;
  if (d % 2 == 0) {
    for (int j = 2; j <= d / 2; ++j) gamma *= j;
  } else {
    gamma = std::sqrt(std::numbers::pi);
    for (int j = 0; j <= (d - 1) / 2; ++j) gamma *= j + 0.5;
  }
  return std::pow(std::numbers::pi, d / 2.0) / gamma;
}

PointSet sample_uniform(std::size_t n, int d, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample size must be >= 1");
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  Rng rng(seed);
  std::vector<double> coords(n * static_cast<std::size_t>(d));
  for (auto& c : coords) c = rng.uniform();
  return PointSet(d, std::move(coords), PointKind::Sample);
}

std::size_t checked_power(std::size_t side, int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  std::size_t n = 1;
  for (int k = 0; k < d; ++k) {
    if (side != 0 && n > SIZE_MAX / side)
      throw Error(ErrorCode::SizeOverflow, "N^d exceeds the addressable size");
    n *= side;
  }
  return n;
}

PointSet grid_points(std::size_t side, int d) {
  if (side < 1) throw Error(ErrorCode::InvalidArgument, "grid side must be >= 1");
  const std::size_t n = checked_power(side, d);
  if (n > SIZE_MAX / static_cast<std::size_t>(d))
    throw Error(ErrorCode::SizeOverflow, "grid coordinate storage overflows");
  std::vector<double> coords(n * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    for (int k = d - 1; k >= 0; --k) {
      coords[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] =
          static_cast<double>(rest % side) / static_cast<double>(side);
      rest /= side;
    }
  }
  return PointSet(d, std::move(coords), PointKind::Grid);
}

}  // namespace rgg

#pragma once

#include <cstddef>
#include <vector>

#include "rgg/geometry.hpp"

namespace rgg {

struct BottleneckResult {
  double m_n = 0.0;
  std::vector<std::size_t> assignment;  // sample index -> grid index
};

/// Exact minimum bottleneck perfect matching between two equal-size point sets.
BottleneckResult bottleneck_matching(const PointSet& sample, const PointSet& grid, const MetricSpec& m);

/// Maximum bipartite matching on the graph {(i, j) : dist(i, j) <= threshold}
/// given a row-major n x n distance table. Returns the matching (row -> column)
/// if it is perfect, otherwise an empty vector.
std::vector<std::size_t> perfect_matching_within(const std::vector<double>& dist, std::size_t n,
                                                 double threshold);

/// Rate expression of the bottleneck distance with unit constant, natural log:
/// (log n / n)^{1/d} for d >= 3, (log^{3/2} n / n)^{1/2} for d = 2,
/// sqrt(log(1/eps) / n) for d = 1.
double bottleneck_rate_envelope(double n, int d, double eps);

}  // namespace rgg

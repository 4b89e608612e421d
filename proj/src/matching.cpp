#include "rgg/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rgg/error.hpp"

namespace rgg {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Hopcroft-Karp on a bipartite graph in CSR form (rows on the left).
class HopcroftKarp {
 public:
  HopcroftKarp(std::size_t n, const std::vector<std::size_t>& offsets, const std::vector<std::size_t>& cols)
      : n_(n), offsets_(offsets), cols_(cols), match_row_(n, kNone), match_col_(n, kNone), layer_(n), cursor_(n) {}

  std::size_t run() {
    std::size_t matched = 0;
    while (bfs()) {
      std::copy(offsets_.begin(), offsets_.end() - 1, cursor_.begin());
      for (std::size_t u = 0; u < n_; ++u)
        if (match_row_[u] == kNone && dfs(u)) ++matched;
    }
    return matched;
  }

  const std::vector<std::size_t>& row_matches() const { return match_row_; }

 private:
  bool bfs() {
    std::vector<std::size_t> queue;
    queue.reserve(n_);
    for (std::size_t u = 0; u < n_; ++u) {
      if (match_row_[u] == kNone) {
        layer_[u] = 0;
        queue.push_back(u);
      } else {
        layer_[u] = kNone;
      }
    }
    bool reachable_free = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      for (std::size_t e = offsets_[u]; e < offsets_[u + 1]; ++e) {
        const std::size_t w = match_col_[cols_[e]];
        if (w == kNone) {
          reachable_free = true;
        } else if (layer_[w] == kNone) {
          layer_[w] = layer_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return reachable_free;
  }

  // Iterative augmenting-path search along the BFS layering.
  bool dfs(std::size_t root) {
    std::vector<std::size_t> path{root};
    while (!path.empty()) {
      const std::size_t u = path.back();
      bool advanced = false;
      for (std::size_t& e = cursor_[u]; e < offsets_[u + 1]; ++e) {
        const std::size_t v = cols_[e];
        const std::size_t w = match_col_[v];
        if (w == kNone) {
          // Augment along the stack: each row on the path takes the column
          // its cursor points at.
          for (std::size_t depth = path.size(); depth-- > 0;) {
            const std::size_t row = path[depth];
            const std::size_t col = cols_[cursor_[row]];
            match_row_[row] = col;
            match_col_[col] = row;
          }
          return true;
        }
        if (layer_[w] == layer_[u] + 1) {
          path.push_back(w);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        layer_[u] = kNone;
        path.pop_back();
        if (!path.empty()) ++cursor_[path.back()];
      }
    }
    return false;
  }

  std::size_t n_;
  const std::vector<std::size_t>& offsets_;
  const std::vector<std::size_t>& cols_;
  std::vector<std::size_t> match_row_, match_col_, layer_, cursor_;
};

}  // namespace

std::vector<std::size_t> perfect_matching_within(const std::vector<double>& dist, std::size_t n,
                                                 double threshold) {
  std::vector<std::size_t> offsets(n + 1, 0), cols;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = dist.data() + i * n;
    for (std::size_t j = 0; j < n; ++j)
      if (row[j] <= threshold) cols.push_back(j);
    offsets[i + 1] = cols.size();
    if (offsets[i + 1] == offsets[i]) return {};
  }
  HopcroftKarp hk(n, offsets, cols);
  if (hk.run() != n) return {};
  return hk.row_matches();
}

BottleneckResult bottleneck_matching(const PointSet& sample, const PointSet& grid, const MetricSpec& m) {
  if (sample.d() != m.d() || grid.d() != m.d())
    throw Error(ErrorCode::DimensionMismatch, "point sets and metric dimensions differ");
  const std::size_t n = sample.size();
  if (grid.size() != n) throw Error(ErrorCode::DimensionMismatch, "sample and grid differ in size");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty point sets");

  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      dist[i * n + j] = torus_distance_unchecked(sample[i].data(), grid[j].data(), m);

  // Every row and every column must reach at least one partner.
  double lower = 0.0, largest = 0.0;
  std::vector<double> col_min(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    double row_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      const double v = dist[i * n + j];
      row_min = std::min(row_min, v);
      col_min[j] = std::min(col_min[j], v);
      largest = std::max(largest, v);
    }
    lower = std::max(lower, row_min);
  }
  for (double v : col_min) lower = std::max(lower, v);

  BottleneckResult result;
  std::vector<std::size_t> best = perfect_matching_within(dist, n, lower);
  if (!best.empty()) {
    result.m_n = lower;
    result.assignment = std::move(best);
    return result;
  }

  // Bracket the optimum by doubling, then bisect over the distinct distances
  // inside the bracket.
  double upper = lower > 0.0 ? lower : largest * 1e-3;
  while (true) {
    upper = std::min(upper * 2.0, largest);
    best = perfect_matching_within(dist, n, upper);
    if (!best.empty() || upper >= largest) break;
  }
  if (best.empty()) throw Error(ErrorCode::InternalConsistency, "no perfect matching at the largest distance");

  std::vector<double> candidates;
  for (double v : dist)
    if (v > lower && v <= upper) candidates.push_back(v);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::size_t lo = 0, hi = candidates.size() - 1;  // candidates[hi] is feasible
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    auto attempt = perfect_matching_within(dist, n, candidates[mid]);
    if (!attempt.empty()) {
      hi = mid;
      best = std::move(attempt);
    } else {
      lo = mid + 1;
    }
  }
  // `best` may come from an earlier, larger feasible threshold when the final
  // probe was infeasible; recompute at the optimum.
  result.m_n = candidates[hi];
  result.assignment = perfect_matching_within(dist, n, result.m_n);
  return result;
}

double bottleneck_rate_envelope(double n, int d, double eps) {
  if (!(n >= 2.0)) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  const double log_n = std::log(n);
  if (d >= 3) return std::pow(log_n / n, 1.0 / d);
  if (d == 2) return std::sqrt(std::pow(log_n, 1.5) / n);
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidArgument, "eps must lie in (0,1)");
  return std::sqrt(std::log(1.0 / eps) / n);
}

}  // namespace rgg

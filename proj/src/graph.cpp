#include "rgg/graph.hpp"

#include <cmath>
#include <ostream>

#include "rgg/error.hpp"

namespace rgg {

void AdjacencyMatrix::connect(std::size_t i, std::size_t j) {
  if (i == j) throw Error(ErrorCode::InvalidArgument, "self-loops are not allowed");
  bits_[i * n_ + j] = 1;
  bits_[j * n_ + i] = 1;
}

AdjacencyMatrix AdjacencyMatrix::permuted(std::span<const std::size_t> perm) const {
  require_permutation(perm, n_);
  AdjacencyMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint8_t* src = bits_.data() + perm[i] * n_;
    std::uint8_t* dst = out.bits_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) dst[j] = src[perm[j]];
  }
  return out;
}

namespace {

void check_inputs(const PointSet& points, double r, const MetricSpec& m) {
  if (points.d() != m.d()) throw Error(ErrorCode::DimensionMismatch, "point set and metric dimensions differ");
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
}

// Cells per axis for the bucketed build. Cell side exceeds r by a margin large
// against the rounding of floor(x * cells), so true neighbours always sit in
// adjacent cells. Zero means the bucketed path does not apply.
std::size_t cells_per_axis(double r, int d, std::size_t n) {
  const double raw = std::floor(1.0 / (r + 1e-9));
  if (raw < 3.0) return 0;
  auto cells = static_cast<std::size_t>(std::fmin(raw, 1e6));
  // Keep the cell table from dwarfing the point count.
  while (cells > 3 && std::pow(static_cast<double>(cells), d) > 4.0 * static_cast<double>(n) + 64.0) --cells;
  return cells;
}

}  // namespace

AdjacencyMatrix build_adjacency_reference(const PointSet& points, double r, const MetricSpec& m) {
  check_inputs(points, r, m);
  const std::size_t n = points.size();
  AdjacencyMatrix a(n);
  const double* base = points.coords().data();
  const auto d = static_cast<std::size_t>(m.d());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (torus_distance_unchecked(base + i * d, base + j * d, m) <= r) a.connect(i, j);
  return a;
}

AdjacencyMatrix build_adjacency(const PointSet& points, double r, const MetricSpec& m) {
  check_inputs(points, r, m);
  const std::size_t n = points.size();
  const int d = m.d();
  const std::size_t cells = cells_per_axis(r, d, n);
  if (cells == 0 || d > 6) return build_adjacency_reference(points, r, m);

  const auto du = static_cast<std::size_t>(d);
  std::size_t total_cells = 1;
  for (int k = 0; k < d; ++k) total_cells *= cells;

  auto cell_coord = [&](double x) {
    auto c = static_cast<std::size_t>(std::floor(x * static_cast<double>(cells)));
    return c >= cells ? cells - 1 : c;
  };
  std::vector<std::size_t> cell_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < du; ++k) idx = idx * cells + cell_coord(points[i][k]);
    cell_of[i] = idx;
  }
  // Counting sort of points by cell.
  std::vector<std::size_t> start(total_cells + 1, 0);
  for (std::size_t c : cell_of) ++start[c + 1];
  for (std::size_t c = 0; c < total_cells; ++c) start[c + 1] += start[c];
  std::vector<std::size_t> members(n);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) members[fill[cell_of[i]]++] = i;
  }

  AdjacencyMatrix a(n);
  const double* base = points.coords().data();
  std::vector<std::size_t> coord(du), neighbour(du);
  std::size_t offsets = 1;
  for (int k = 0; k < d; ++k) offsets *= 3;

  for (std::size_t c = 0; c < total_cells; ++c) {
    if (start[c] == start[c + 1]) continue;
    std::size_t rest = c;
    for (std::size_t k = du; k-- > 0;) {
      coord[k] = rest % cells;
      rest /= cells;
    }
    for (std::size_t o = 0; o < offsets; ++o) {
      std::size_t code = o, nb = 0;
      for (std::size_t k = 0; k < du; ++k) {
        const std::size_t shift = code % 3;
        code /= 3;
        neighbour[k] = (coord[k] + cells + shift - 1) % cells;
      }
      for (std::size_t k = 0; k < du; ++k) nb = nb * cells + neighbour[k];
      if (nb < c) continue;  // each unordered cell pair once
      for (std::size_t s = start[c]; s < start[c + 1]; ++s) {
        const std::size_t i = members[s];
        for (std::size_t u = start[nb]; u < start[nb + 1]; ++u) {
          const std::size_t j = members[u];
          if (nb == c && j <= i) continue;
          if (torus_distance_unchecked(base + i * du, base + j * du, m) <= r) a.connect(i, j);
        }
      }
    }
  }
  return a;
}

DegreeSummary degree_summary(const AdjacencyMatrix& a, int d, double r) {
  const std::size_t n = a.order();
  DegreeSummary s;
  s.degrees.resize(n);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t deg = 0;
    for (std::uint8_t bit : a.row(i)) deg += bit;
    s.degrees[i] = deg;
    sum += deg;
  }
  s.edge_count = sum / 2;
  s.average_degree_empirical = n == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(n);
  s.average_degree_theoretical = ball_volume_theta(d) * static_cast<double>(n) * std::pow(r, d);
  return s;
}

void require_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) throw Error(ErrorCode::NotPermutation, "matching length differs from matrix order");
  std::vector<bool> seen(n, false);
  for (std::size_t v : perm) {
    if (v >= n || seen[v]) throw Error(ErrorCode::NotPermutation, "matching is not a bijection");
    seen[v] = true;
  }
}

std::vector<std::size_t> cross_neighbor_count(const AdjacencyMatrix& sample, const AdjacencyMatrix& grid,
                                              std::span<const std::size_t> matching) {
  const std::size_t n = sample.order();
  if (grid.order() != n) throw Error(ErrorCode::DimensionMismatch, "matrices differ in order");
  require_permutation(matching, n);
  std::vector<std::size_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto srow = sample.row(i);
    const auto grow = grid.row(matching[i]);
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) count += static_cast<std::size_t>(srow[j] & grow[matching[j]]);
    out[i] = count;
  }
  return out;
}

void write_edge_list(std::ostream& out, const AdjacencyMatrix& a) {
  const std::size_t n = a.order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a(i, j)) out << i << ' ' << j << '\n';
}

}  // namespace rgg

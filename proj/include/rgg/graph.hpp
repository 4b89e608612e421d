#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rgg/geometry.hpp"

namespace rgg {

/// Dense symmetric 0/1 matrix with zero diagonal.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t order() const noexcept { return n_; }

  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
  std::span<const std::uint8_t> row(std::size_t i) const { return {bits_.data() + i * n_, n_}; }

  /// Sets both (i, j) and (j, i). Self-loops are rejected.
  void connect(std::size_t i, std::size_t j);

  /// Copy with rows and columns relabelled so that entry (i, j) of the result
  /// is entry (perm[i], perm[j]) of this matrix.
  AdjacencyMatrix permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

struct DegreeSummary {
  std::vector<std::size_t> degrees;
  std::uint64_t edge_count = 0;
  double average_degree_empirical = 0.0;
  double average_degree_theoretical = 0.0;  // theta^(d) n r^d
};

/// Edge iff i != j and torus_distance <= r (no tolerance). Uses cell lists
/// when the torus holds at least three cells of side > r per axis; the result
/// is identical to build_adjacency_reference.
AdjacencyMatrix build_adjacency(const PointSet& points, double r, const MetricSpec& m);

/// O(n^2) all-pairs construction.
AdjacencyMatrix build_adjacency_reference(const PointSet& points, double r, const MetricSpec& m);

DegreeSummary degree_summary(const AdjacencyMatrix& a, int d, double r);

/// Entry i is sum_j A_sample[i][j] * A_grid[matching[i]][matching[j]].
std::vector<std::size_t> cross_neighbor_count(const AdjacencyMatrix& sample,
                                              const AdjacencyMatrix& grid,
                                              std::span<const std::size_t> matching);

/// Throws NotPermutation unless perm is a bijection on [0, n).
void require_permutation(std::span<const std::size_t> perm, std::size_t n);

/// Upper-triangle edge list, one "i j" pair per line, 0-based.
void write_edge_list(std::ostream& out, const AdjacencyMatrix& a);

}  // namespace rgg

#pragma once

// Spectra of the deterministic geometric graph: the l_inf graph on the
// N^d lattice, a d-fold tensor product of circulants.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rgg {

struct DggSpec {
  std::size_t side;  // N
  int d;
  double r;
  std::size_t reach;    // k = floor(N r)
  std::uint64_t degree; // (2k+1)^d - 1

  std::size_t order() const;
  /// 2k+1 <= N, the range where the analytic formulas describe the torus graph.
  bool analytic() const noexcept { return 2 * reach + 1 <= side; }
};

/// Builds the spec without range checks.
DggSpec make_dgg_spec(std::size_t side, int d, double r);

/// Spec for an explicit reach k (radius recorded as (k + 1/2) / N).
DggSpec dgg_spec_from_reach(std::size_t side, int d, std::size_t reach);

/// (2 floor(N r) + 1)^d - 1; throws AnalyticRangeExceeded when 2k+1 > N.
std::uint64_t dgg_degree(std::size_t side, int d, double r);

/// Product over axes of the Dirichlet-kernel ratio sin(pi m (2k+1)/N) / sin(pi m/N)
/// (2k+1 at m = 0), minus one; ascending.
std::vector<double> dgg_eigenvalues_closed_form(const DggSpec& spec);

/// d-dimensional DFT of the first-block-row tensor c, where c_h = 1 iff h != 0
/// and every h_s lies in [0, k] or [N-k, N-1]; ascending.
std::vector<double> dgg_eigenvalues_dft(const DggSpec& spec);

}  // namespace rgg

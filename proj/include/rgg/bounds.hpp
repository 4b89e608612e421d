#pragma once

// Numeric evaluators for the degree bound, the trace decomposition of the
// cubed Levy distance, the edge-count variance bound and the tail bound on
// P{L^3 > t}, plus a Monte Carlo binomial tail estimator.

#include <cstddef>
#include <cstdint>
#include <span>

#include "json.hpp"
#include "rgg/geometry.hpp"
#include "rgg/graph.hpp"
#include "rgg/spectra.hpp"

namespace rgg {

/// d^{1/p} 2^d a_n (1 + 1/(2 a_n^{1/d}))^d.
double lemma1_degree_bound(int d, double p, double a_n);

/// theta^(d) + 2 theta^(d) a_n.
double lemma6_variance_bound(int d, double a_n);

/// Terms of the trace decomposition evaluated on one (sample, grid, matching)
/// instance. Cross-neighbor counts stand in for the binomial variables.
struct Lemma4Terms {
  double t0 = 0.0;                // (1/n) tr (A_X - A_D')^2 with A_D' relabelled by the matching
  double t1 = 0.0;                // mean sample degree + mean grid degree - (2/n) sum N(x_i, x'_i)
  double mean_degree = 0.0;       // (1/n) sum N(x_i)
  double mean_grid_degree = 0.0;  // empirical a'_n
  double mean_cross = 0.0;        // (1/n) sum N(x_i, x'_i)
  double a_n = 0.0;
  double t_degree = 0.0;  // d^{1/p} 2^{d+1} |mean_degree - a_n|
  double t_L = 0.0;       // d^{1/p} 2^{d+1} |a_n - 2 mean_cross|
  double t_aprime = 0.0;  // mean_grid_degree
  double aggregate = 0.0; // t_degree + t_L + t_aprime
  double levy_cubed = 0.0;
};

Lemma4Terms lemma4_decomposition(const PointSet& sample, const PointSet& grid,
                                 std::span<const std::size_t> matching, double r, const MetricSpec& m);

/// Same, reusing adjacency matrices and spectra the caller already has.
Lemma4Terms lemma4_decomposition(const AdjacencyMatrix& sample_adj, const AdjacencyMatrix& grid_adj,
                                 std::span<const std::size_t> matching, const Esd& sample_esd,
                                 const Esd& grid_esd, double r, const MetricSpec& m);

/// Success probability used for the binomial L_i: theta (r - 2M) as printed,
/// or theta (r - 2M)^d (the volume of the shrunken ball).
enum class BinomialParameter { AsPrinted, BallVolume };

struct Theorem1Input {
  double t = 0.0;
  std::size_t n = 0;
  int d = 1;
  double p = kInfinity;
  double r = 0.0;
  double a_n = 0.0;
  double m_n = 0.0;
  double a = 2.0;
  BinomialParameter mode = BinomialParameter::AsPrinted;
};

struct Theorem1Terms {
  double term1 = 0.0;  // 2n exp(-a_n eps^2 (1 - 2M/r) / 3)
  double term2 = 0.0;  // n [theta q (a-1) + 1]^n / a^{t/(d^{1/p} 2^{d+3}) + a_n (2-c)/4}
  double term3 = 0.0;  // d^{2/p} 2^{2d+6} [theta + 2 theta a_n] / (n^2 t^2)
  double total = 0.0;
  double epsilon = 0.0;
  double c = 0.0;
  double log_term2 = 0.0;
  bool vacuous = false;          // eps <= 0 or total >= 1
  bool term2_saturated = false;  // exp(log_term2) overflowed
  bool epsilon_in_chernoff_range = false;  // 0 < eps <= 3/2

  double display_total() const;  // total clipped to [0, 1]
};

/// Throws InvalidArgument for t <= 0 or a < 1, RadiusTooSmall for r <= 2M.
Theorem1Terms theorem1_rhs(const Theorem1Input& in);

struct BoundReport {
  double lemma1_bound = 0.0;
  double lemma2_trace = 0.0;
  Lemma4Terms lemma4;
  double lemma6_variance_bound = 0.0;
  Theorem1Terms theorem1;
  Theorem1Terms theorem1_ball_volume;
  double epsilon = 0.0;
  double c = 0.0;
  double a_parameter = 2.0;
  double t = 0.0;
};

/// {lemma1, trace, lemma4: {t_degree, t_L, t_aprime}, lemma6,
///  theorem1: {term1, term2, term3, total, epsilon, c, vacuous}} plus extras.
nlohmann::ordered_json to_json(const BoundReport& report);

struct TailEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

/// Monte Carlo estimate of P{|X - n prob| >= threshold}, X ~ Bin(n, prob).
TailEstimate binomial_tail_oracle(std::size_t n, double prob, double threshold, std::size_t trials,
                                  std::uint64_t seed);

/// 2 exp(-eps^2 mean / 3).
double chernoff_binomial_bound(double eps, double mean);

}  // namespace rgg

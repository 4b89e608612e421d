#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "rgg/bounds.hpp"
#include "rgg/geometry.hpp"
#include "rgg/graph.hpp"
#include "rgg/spectra.hpp"

namespace rgg {

enum class RadiusRule {
  Explicit,     // r given directly
  LogOverSqrt,  // r = log(n) / sqrt(n)
};

struct ExperimentConfig {
  std::size_t side = 0;  // N; the graph has n = N^d vertices
  int d = 1;
  double p = kInfinity;
  RadiusRule rule = RadiusRule::Explicit;
  double r = 0.0;
  double t = 0.0;
  double a = 2.0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;

  std::size_t order() const;
  double radius() const;
  MetricSpec metric() const { return MetricSpec(d, p); }
  double average_degree() const;  // theta^(d) n r^d
  void validate() const;
};

struct StageTimings {
  double sample = 0.0;
  double adjacency = 0.0;
  double eigen = 0.0;
  double levy = 0.0;
  double matching = 0.0;
  double bounds = 0.0;
};

struct TrialResult {
  std::uint64_t trial_seed = 0;
  double levy_distance = 0.0;
  double levy_cubed = 0.0;
  double trace_bound = 0.0;
  double m_n = 0.0;
  std::uint64_t xi_n = 0;
  std::shared_ptr<const Esd> esd_rgg;
  Lemma4Terms lemma4;
  StageTimings timings;
};

/// Per-config state shared by all trials: the lattice, its adjacency and spectrum.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig cfg);

  const ExperimentConfig& config() const noexcept { return cfg_; }
  const PointSet& grid() const noexcept { return grid_; }
  const AdjacencyMatrix& grid_adjacency() const noexcept { return grid_adj_; }
  const Esd& dgg_esd() const noexcept { return *dgg_esd_; }
  /// True when the lattice spectrum came from the product-of-sines formula.
  bool dgg_closed_form() const noexcept { return dgg_closed_form_; }

  TrialResult run_trial(std::size_t index) const;
  /// Runs the pipeline on a caller-supplied sample (e.g. the grid itself).
  TrialResult run_trial_on(const PointSet& sample, std::uint64_t trial_seed) const;
  /// Trials 0..count-1 in parallel; results ordered by index.
  std::vector<TrialResult> run_trials(std::size_t count) const;

 private:
  ExperimentConfig cfg_;
  PointSet grid_;
  AdjacencyMatrix grid_adj_;
  std::shared_ptr<const Esd> dgg_esd_;
  bool dgg_closed_form_ = false;
};

TrialResult run_trial(const ExperimentConfig& cfg, std::size_t trial_index);

struct ProbabilityEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

/// Fraction of trials with levy_cubed > t and its binomial standard error.
ProbabilityEstimate estimate_probability(std::span<const TrialResult> trials, double t);
ProbabilityEstimate estimate_probability(const ExperimentConfig& cfg, std::size_t trials);

struct Figure1Result {
  std::size_t n = 0;
  int d = 1;
  double r = 0.0;
  double a_n = 0.0;
  std::vector<double> x;
  std::vector<double> rgg_cdf;
  std::vector<double> dgg_cdf;
  double levy_distance = 0.0;
  std::shared_ptr<const Esd> rgg;
  std::shared_ptr<const Esd> dgg;
  // Filled when the bottleneck matching is requested.
  std::optional<double> m_n;
  std::optional<double> trace_bound;
};

/// RGG vs lattice spectral CDFs at r = log(n)/sqrt(n) under l_inf.
/// n must be a perfect d-th power.
Figure1Result figure1_experiment(std::size_t n, int d, std::uint64_t seed, std::size_t x_points = 401,
                                 bool with_matching = false);

/// Tail bound evaluated at every realized bottleneck distance of a trial set;
/// the largest total is kept. A trial with r <= 2 M_n makes the bound
/// inapplicable and the result is flagged vacuous.
struct Theorem1Envelope {
  Theorem1Terms terms;
  double m_n_used = 0.0;
  bool radius_too_small = false;
};

Theorem1Envelope theorem1_envelope(const ExperimentConfig& cfg, std::span<const TrialResult> trials, double t,
                                   BinomialParameter mode = BinomialParameter::AsPrinted);

struct EdgeCountStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  std::size_t trials = 0;
  double a_n = 0.0;
  double printed_bound = 0.0;  // theta + 2 theta a_n
};

/// Monte Carlo moments of the RGG edge count.
EdgeCountStats edge_count_variance(std::size_t n, const MetricSpec& m, double r, std::size_t trials,
                                   std::uint64_t seed);

/// Worker cap from RGG_SPECTRA_THREADS (0 or unset = hardware concurrency).
std::size_t worker_count();

/// Calls body(i) for i in [0, count) on up to worker_count() threads. The
/// first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rgg

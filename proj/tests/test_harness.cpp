#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "rgg/error.hpp"
#include "rgg/harness.hpp"

using namespace rgg;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.side = 8;
  cfg.d = 1;
  cfg.p = kInfinity;
  cfg.r = 0.2;
  cfg.t = 0.01;
  cfg.seed = 7;
  return cfg;
}

bool same_result(const TrialResult& a, const TrialResult& b) {
  return a.trial_seed == b.trial_seed && a.levy_distance == b.levy_distance && a.levy_cubed == b.levy_cubed &&
         a.trace_bound == b.trace_bound && a.m_n == b.m_n && a.xi_n == b.xi_n &&
         std::ranges::equal(a.esd_rgg->eigenvalues(), b.esd_rgg->eigenvalues()) && a.lemma4.t0 == b.lemma4.t0 &&
         a.lemma4.t1 == b.lemma4.t1 && a.lemma4.aggregate == b.lemma4.aggregate;
}

}  // namespace

TEST_CASE("per-trial trace bound holds") {
  const Experiment exp(small_config());
  CHECK(exp.dgg_closed_form());
  for (std::size_t i = 0; i < 20; ++i) {
    const TrialResult tr = exp.run_trial(i);
    CHECK(tr.levy_cubed <= tr.trace_bound + 1e-9);
    CHECK(tr.lemma4.t0 == tr.lemma4.t1);
    CHECK(tr.m_n >= 0.0);
  }
}

TEST_CASE("the lattice as its own sample") {
  const Experiment exp(small_config());
  const TrialResult tr = exp.run_trial_on(exp.grid(), 0);
  // Closed-form and eigensolver spectra differ only by rounding.
  CHECK(tr.levy_distance <= 1e-11);
  CHECK(tr.m_n == 0.0);
  CHECK(tr.trace_bound == 0.0);
}

TEST_CASE("trials replay bit-identically") {
  ExperimentConfig cfg;
  cfg.side = 64;
  cfg.d = 1;
  cfg.p = kInfinity;
  cfg.r = std::log(64.0) / 64.0;
  cfg.seed = 12345;
  const TrialResult a = run_trial(cfg, 3), b = run_trial(cfg, 3), c = run_trial(cfg, 4);
  CHECK(same_result(a, b));
  CHECK_FALSE(same_result(a, c));

  const Experiment exp(cfg);
  const auto batch = exp.run_trials(6);
  CHECK(same_result(batch[3], a));
}

TEST_CASE("parallel and serial runs agree") {
  const Experiment exp(small_config());
  setenv("RGG_SPECTRA_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  const auto serial = exp.run_trials(12);
  setenv("RGG_SPECTRA_THREADS", "4", 1);
  CHECK(worker_count() == 4);
  const auto parallel = exp.run_trials(12);
  unsetenv("RGG_SPECTRA_THREADS");
  CHECK(worker_count() >= 1);
  for (std::size_t i = 0; i < 12; ++i) CHECK(same_result(serial[i], parallel[i]));
}

TEST_CASE("parallel_for visits each index once and propagates errors") {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10,
                               [](std::size_t i) {
                                 if (i == 7) throw Error(ErrorCode::InternalConsistency, "boom");
                               }),
                  Error);
}

TEST_CASE("probability estimates") {
  const Experiment exp(small_config());
  const auto trials = exp.run_trials(40);
  CHECK(estimate_probability(trials, -1.0).p_hat == 1.0);
  CHECK(estimate_probability(trials, 1e9).p_hat == 0.0);
  double prev = 1.0;
  for (double t = 0.0; t < 0.2; t += 0.002) {
    const ProbabilityEstimate est = estimate_probability(trials, t);
    CHECK(est.p_hat <= prev);
    CHECK(est.std_error == doctest::Approx(std::sqrt(est.p_hat * (1 - est.p_hat) / 40.0)));
    prev = est.p_hat;
  }
  ExperimentConfig cfg = small_config();
  cfg.t = -1.0;
  CHECK(estimate_probability(cfg, 5).p_hat == 1.0);
}

TEST_CASE("non-l_inf lattices use the eigensolver") {
  ExperimentConfig cfg = small_config();
  cfg.p = 2.0;
  cfg.d = 2;
  cfg.side = 6;
  cfg.r = 0.3;
  const Experiment exp(cfg);
  CHECK_FALSE(exp.dgg_closed_form());
  const TrialResult tr = exp.run_trial(0);
  CHECK(tr.levy_cubed <= tr.trace_bound + 1e-9);
}

TEST_CASE("wrapping lattice radius falls back to the eigensolver") {
  ExperimentConfig cfg = small_config();
  cfg.r = 0.45;  // 2k+1 = 7 <= 8
  CHECK(Experiment(cfg).dgg_closed_form());
  cfg.r = 0.5;  // 2k+1 = 9 > 8
  const Experiment wrapped(cfg);
  CHECK_FALSE(wrapped.dgg_closed_form());
  CHECK(wrapped.dgg_esd().size() == 8);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg = small_config();
  cfg.side = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = small_config();
  cfg.side = 100;
  cfg.d = 2;
  CHECK_THROWS_AS(cfg.validate(), Error);  // 10^4 vertices
  cfg = small_config();
  cfg.r = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = small_config();
  cfg.a = 0.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = small_config();
  cfg.rule = RadiusRule::LogOverSqrt;
  CHECK(cfg.radius() == doctest::Approx(std::log(8.0) / std::sqrt(8.0)));
}

TEST_CASE("tail bound over realized bottleneck distances") {
  ExperimentConfig cfg;
  cfg.side = 64;
  cfg.d = 1;
  cfg.r = 0.3;
  cfg.seed = 3;
  const Experiment exp(cfg);
  const auto trials = exp.run_trials(10);
  const Theorem1Envelope env = theorem1_envelope(cfg, trials, 2.0);
  // The bound is not monotone in M_n, so the envelope is the largest total.
  double worst = 0.0;
  bool used_seen = false;
  for (const auto& tr : trials) {
    Theorem1Input in;
    in.t = 2.0;
    in.n = 64;
    in.d = 1;
    in.r = 0.3;
    in.a_n = 2.0 * 64 * 0.3;
    in.m_n = tr.m_n;
    worst = std::max(worst, theorem1_rhs(in).total);
    used_seen = used_seen || tr.m_n == env.m_n_used;
  }
  CHECK(env.terms.total == worst);
  CHECK(used_seen);
  CHECK_FALSE(env.radius_too_small);

  cfg.r = 0.02;  // below twice any realistic bottleneck distance
  const Experiment tight(cfg);
  const auto tight_trials = tight.run_trials(5);
  const Theorem1Envelope bad = theorem1_envelope(cfg, tight_trials, 2.0);
  CHECK(bad.radius_too_small);
  CHECK(bad.terms.vacuous);
}

TEST_CASE("lattice versus sample spectra at the log/sqrt radius") {
  const Figure1Result fig = figure1_experiment(256, 1, 1, 101, true);
  CHECK(fig.r == doctest::Approx(std::log(256.0) / 16.0));
  CHECK(fig.a_n == doctest::Approx(2.0 * 256 * fig.r));
  CHECK(fig.x.size() == 101);
  CHECK(fig.rgg_cdf.front() == 0.0);
  CHECK(fig.rgg_cdf.back() == 1.0);
  CHECK(fig.dgg_cdf.back() == 1.0);
  for (std::size_t i = 1; i < fig.x.size(); ++i) {
    CHECK(fig.rgg_cdf[i] >= fig.rgg_cdf[i - 1]);
    CHECK(fig.dgg_cdf[i] == (*fig.dgg)(fig.x[i]));
  }
  REQUIRE(fig.trace_bound.has_value());
  CHECK(std::pow(fig.levy_distance, 3) <= *fig.trace_bound + 1e-9);
  CHECK_THROWS_AS(figure1_experiment(255, 2, 1), Error);
}

TEST_CASE("edge count moments") {
  const EdgeCountStats s = edge_count_variance(200, MetricSpec(1, 2.0), 0.02, 400, 5);
  // E[xi] = C(n,2) * 2r on the circle.
  CHECK(std::fabs(s.mean - 199.0 * 100.0 * 0.04) < 4.0 * std::sqrt(s.variance / 400.0));
  CHECK(s.variance > 0.0);
  CHECK(s.printed_bound == doctest::Approx(2.0 + 4.0 * 200 * 0.02 * 2.0));
  CHECK(s.trials == 400);
}

#include "rgg/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "rgg/dgg.hpp"
#include "rgg/error.hpp"
#include "rgg/levy.hpp"
#include "rgg/matching.hpp"
#include "rgg/random.hpp"

namespace rgg {

std::size_t ExperimentConfig::order() const { return checked_power(side, d); }

double ExperimentConfig::radius() const {
  if (rule == RadiusRule::Explicit) return r;
  const double n = static_cast<double>(order());
  return std::log(n) / std::sqrt(n);
}

double ExperimentConfig::average_degree() const {
  return ball_volume_theta(d) * static_cast<double>(order()) * std::pow(radius(), d);
}

void ExperimentConfig::validate() const {
  if (side < 1) throw Error(ErrorCode::InvalidArgument, "grid side must be >= 1");
  (void)metric();
  const std::size_t n = order();
  if (n > kMaxDenseOrder)
    throw Error(ErrorCode::SizeOverflow, "n = " + std::to_string(n) + " exceeds the dense ceiling");
  if (rule == RadiusRule::LogOverSqrt && n < 2)
    throw Error(ErrorCode::InvalidArgument, "log(n)/sqrt(n) needs n >= 2");
  if (!(radius() > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (!(a >= 1.0)) throw Error(ErrorCode::InvalidArgument, "a must be >= 1");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

Experiment::Experiment(ExperimentConfig cfg)
    : cfg_((cfg.validate(), cfg)),
      grid_(grid_points(cfg_.side, cfg_.d)),
      grid_adj_(build_adjacency(grid_, cfg_.radius(), cfg_.metric())) {
  const DggSpec spec = make_dgg_spec(cfg_.side, cfg_.d, cfg_.radius());
  // The closed form is used only when the explicit lattice graph is the
  // (2k+1)^d - 1 regular graph it describes; a radius sitting exactly on a
  // lattice distance can round either way in the direct distance test.
  bool use_closed = cfg_.metric().is_inf() && spec.analytic();
  if (use_closed) {
    const DegreeSummary deg = degree_summary(grid_adj_, cfg_.d, cfg_.radius());
    for (std::size_t v : deg.degrees) use_closed = use_closed && v == spec.degree;
  }
  dgg_closed_form_ = use_closed;
  dgg_esd_ = std::make_shared<const Esd>(use_closed ? dgg_eigenvalues_closed_form(spec) : sym_eigenvalues(grid_adj_));
}

TrialResult Experiment::run_trial(std::size_t index) const {
  const std::uint64_t seed = derive_seed(cfg_.seed, index);
  auto start = Clock::now();
  const PointSet sample = sample_uniform(cfg_.order(), cfg_.d, seed);
  const double sample_time = seconds_since(start);
  TrialResult result = run_trial_on(sample, seed);
  result.timings.sample = sample_time;
  return result;
}

TrialResult Experiment::run_trial_on(const PointSet& sample, std::uint64_t trial_seed) const {
  if (sample.size() != grid_.size() || sample.d() != cfg_.d)
    throw Error(ErrorCode::DimensionMismatch, "sample does not match the experiment size");
  const MetricSpec metric = cfg_.metric();
  const double r = cfg_.radius();
  TrialResult out;
  out.trial_seed = trial_seed;

  auto start = Clock::now();
  const AdjacencyMatrix adj = build_adjacency(sample, r, metric);
  out.xi_n = degree_summary(adj, cfg_.d, r).edge_count;
  out.timings.adjacency = seconds_since(start);

  start = Clock::now();
  auto esd = std::make_shared<const Esd>(sym_eigenvalues(adj));
  out.timings.eigen = seconds_since(start);

  start = Clock::now();
  out.levy_distance = levy_distance(*esd, *dgg_esd_, 1e-12).distance;
  out.levy_cubed = out.levy_distance * out.levy_distance * out.levy_distance;
  out.timings.levy = seconds_since(start);

  start = Clock::now();
  const BottleneckResult match = bottleneck_matching(sample, grid_, metric);
  out.m_n = match.m_n;
  out.timings.matching = seconds_since(start);

  start = Clock::now();
  out.lemma4 = lemma4_decomposition(adj, grid_adj_, match.assignment, *esd, *dgg_esd_, r, metric);
  out.trace_bound = out.lemma4.t0;
  out.timings.bounds = seconds_since(start);

  out.esd_rgg = std::move(esd);
  return out;
}

std::vector<TrialResult> Experiment::run_trials(std::size_t count) const {
  std::vector<TrialResult> results(count);
  parallel_for(count, [&](std::size_t i) { results[i] = run_trial(i); });
  return results;
}

TrialResult run_trial(const ExperimentConfig& cfg, std::size_t trial_index) {
  return Experiment(cfg).run_trial(trial_index);
}

ProbabilityEstimate estimate_probability(std::span<const TrialResult> trials, double t) {
  ProbabilityEstimate est;
  est.trials = trials.size();
  if (trials.empty()) return est;
  std::size_t hits = 0;
  for (const auto& tr : trials)
    if (tr.levy_cubed > t) ++hits;
  const double count = static_cast<double>(trials.size());
  est.p_hat = static_cast<double>(hits) / count;
  est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / count);
  return est;
}

ProbabilityEstimate estimate_probability(const ExperimentConfig& cfg, std::size_t trials) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const Experiment exp(cfg);
  const auto results = exp.run_trials(trials);
  return estimate_probability(results, cfg.t);
}

Figure1Result figure1_experiment(std::size_t n, int d, std::uint64_t seed, std::size_t x_points,
                                 bool with_matching) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  if (x_points < 2) throw Error(ErrorCode::InvalidArgument, "need at least two x points");
  const auto side = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / d)));
  if (checked_power(side, d) != n)
    throw Error(ErrorCode::InvalidArgument, std::to_string(n) + " is not a perfect d-th power");

  ExperimentConfig cfg;
  cfg.side = side;
  cfg.d = d;
  cfg.p = kInfinity;
  cfg.rule = RadiusRule::LogOverSqrt;
  cfg.seed = seed;
  cfg.validate();

  Figure1Result out;
  out.n = n;
  out.d = d;
  out.r = cfg.radius();
  out.a_n = cfg.average_degree();

  const MetricSpec metric = cfg.metric();
  const PointSet sample = sample_uniform(n, d, derive_seed(seed, 0));
  const AdjacencyMatrix adj = build_adjacency(sample, out.r, metric);
  out.rgg = std::make_shared<const Esd>(sym_eigenvalues(adj));

  const Experiment lattice(cfg);
  out.dgg = std::shared_ptr<const Esd>(std::make_shared<Esd>(lattice.dgg_esd()));
  out.levy_distance = levy_distance(*out.rgg, *out.dgg).distance;

  if (with_matching) {
    const BottleneckResult match = bottleneck_matching(sample, lattice.grid(), metric);
    out.m_n = match.m_n;
    out.trace_bound = trace_bound(adj, lattice.grid_adjacency().permuted(match.assignment));
  }

  const double lo = std::min(out.rgg->min(), out.dgg->min()) - 1.0;
  const double hi = std::max(out.rgg->max(), out.dgg->max()) + 1.0;
  out.x.resize(x_points);
  out.rgg_cdf.resize(x_points);
  out.dgg_cdf.resize(x_points);
  for (std::size_t i = 0; i < x_points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(x_points - 1);
    out.x[i] = x;
    out.rgg_cdf[i] = (*out.rgg)(x);
    out.dgg_cdf[i] = (*out.dgg)(x);
  }
  return out;
}

Theorem1Envelope theorem1_envelope(const ExperimentConfig& cfg, std::span<const TrialResult> trials, double t,
                                   BinomialParameter mode) {
  if (trials.empty()) throw Error(ErrorCode::InvalidArgument, "no trials");
  Theorem1Input in;
  in.t = t;
  in.n = cfg.order();
  in.d = cfg.d;
  in.p = cfg.p;
  in.r = cfg.radius();
  in.a_n = cfg.average_degree();
  in.a = cfg.a;
  in.mode = mode;

  Theorem1Envelope env;
  bool have = false;
  for (const auto& tr : trials) {
    if (!(in.r > 2.0 * tr.m_n)) {
      env.radius_too_small = true;
      env.m_n_used = std::max(env.m_n_used, tr.m_n);
      continue;
    }
    in.m_n = tr.m_n;
    const Theorem1Terms terms = theorem1_rhs(in);
    if (!have || terms.total > env.terms.total) {
      env.terms = terms;
      if (!env.radius_too_small) env.m_n_used = tr.m_n;
      have = true;
    }
  }
  if (env.radius_too_small) env.terms.vacuous = true;
  return env;
}

EdgeCountStats edge_count_variance(std::size_t n, const MetricSpec& m, double r, std::size_t trials,
                                   std::uint64_t seed) {
  if (trials < 2) throw Error(ErrorCode::InvalidArgument, "variance needs at least two trials");
  std::vector<double> counts(trials);
  parallel_for(trials, [&](std::size_t t) {
    const PointSet pts = sample_uniform(n, m.d(), derive_seed(seed, t));
    counts[t] = static_cast<double>(degree_summary(build_adjacency(pts, r, m), m.d(), r).edge_count);
  });
  EdgeCountStats s;
  s.trials = trials;
  for (double c : counts) s.mean += c;
  s.mean /= static_cast<double>(trials);
  for (double c : counts) s.variance += (c - s.mean) * (c - s.mean);
  s.variance /= static_cast<double>(trials - 1);
  s.a_n = ball_volume_theta(m.d()) * static_cast<double>(n) * std::pow(r, m.d());
  s.printed_bound = lemma6_variance_bound(m.d(), s.a_n);
  return s;
}

std::size_t worker_count() {
  std::size_t requested = 0;
  if (const char* env = std::getenv("RGG_SPECTRA_THREADS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') requested = static_cast<std::size_t>(v);
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rgg

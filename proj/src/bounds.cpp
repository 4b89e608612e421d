#include "rgg/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "rgg/error.hpp"
#include "rgg/levy.hpp"
#include "rgg/random.hpp"

namespace rgg {

double lemma1_degree_bound(int d, double p, double a_n) {
  if (!(a_n > 0.0)) throw Error(ErrorCode::InvalidArgument, "a_n must be positive");
  const double dr = MetricSpec(d, p).d_root();
  return dr * std::ldexp(1.0, d) * a_n * std::pow(1.0 + 1.0 / (2.0 * std::pow(a_n, 1.0 / d)), d);
}

double lemma6_variance_bound(int d, double a_n) {
  if (!(a_n > 0.0)) throw Error(ErrorCode::InvalidArgument, "a_n must be positive");
  const double theta = ball_volume_theta(d);
  return theta + 2.0 * theta * a_n;
}

Lemma4Terms lemma4_decomposition(const AdjacencyMatrix& sample_adj, const AdjacencyMatrix& grid_adj,
                                 std::span<const std::size_t> matching, const Esd& sample_esd,
                                 const Esd& grid_esd, double r, const MetricSpec& m) {
  const std::size_t n = sample_adj.order();
  const auto cross = cross_neighbor_count(sample_adj, grid_adj, matching);
  const DegreeSummary sample_deg = degree_summary(sample_adj, m.d(), r);
  const DegreeSummary grid_deg = degree_summary(grid_adj, m.d(), r);

  std::uint64_t cross_sum = 0;
  for (std::size_t c : cross) cross_sum += c;
  const double nn = static_cast<double>(n);

  Lemma4Terms t;
  t.mean_degree = sample_deg.average_degree_empirical;
  t.mean_grid_degree = grid_deg.average_degree_empirical;
  t.mean_cross = static_cast<double>(cross_sum) / nn;
  t.a_n = sample_deg.average_degree_theoretical;
  t.t0 = trace_bound(sample_adj, grid_adj.permuted(matching));
  // Sum of integers divided once, so the identity with t0 is exact.
  const auto t1_numerator = static_cast<std::int64_t>(2 * sample_deg.edge_count) +
                            static_cast<std::int64_t>(2 * grid_deg.edge_count) -
                            2 * static_cast<std::int64_t>(cross_sum);
  t.t1 = static_cast<double>(t1_numerator) / nn;

  const double factor = m.d_root() * std::ldexp(1.0, m.d() + 1);
  t.t_degree = factor * std::fabs(t.mean_degree - t.a_n);
  t.t_L = factor * std::fabs(t.a_n - 2.0 * t.mean_cross);
  t.t_aprime = t.mean_grid_degree;
  t.aggregate = t.t_degree + t.t_L + t.t_aprime;
  const double levy = levy_distance(sample_esd, grid_esd, 1e-12).distance;
  t.levy_cubed = levy * levy * levy;
  return t;
}

Lemma4Terms lemma4_decomposition(const PointSet& sample, const PointSet& grid,
                                 std::span<const std::size_t> matching, double r, const MetricSpec& m) {
  if (sample.size() != grid.size()) throw Error(ErrorCode::DimensionMismatch, "sample and grid differ in size");
  const AdjacencyMatrix ax = build_adjacency(sample, r, m);
  const AdjacencyMatrix ad = build_adjacency(grid, r, m);
  const Esd fx(sym_eigenvalues(ax));
  const Esd fd(sym_eigenvalues(ad));
  return lemma4_decomposition(ax, ad, matching, fx, fd, r, m);
}

double Theorem1Terms::display_total() const { return std::clamp(total, 0.0, 1.0); }

Theorem1Terms theorem1_rhs(const Theorem1Input& in) {
  if (!(in.t > 0.0)) throw Error(ErrorCode::InvalidArgument, "t must be positive");
  if (!(in.a >= 1.0)) throw Error(ErrorCode::InvalidArgument, "a must be >= 1");
  if (in.n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (!(in.a_n > 0.0)) throw Error(ErrorCode::InvalidArgument, "a_n must be positive");
  if (!(in.m_n >= 0.0)) throw Error(ErrorCode::InvalidArgument, "M_n must be nonnegative");
  if (!(in.r > 2.0 * in.m_n))
    throw Error(ErrorCode::RadiusTooSmall, "r must exceed 2 M_n (r = " + std::to_string(in.r) +
                                               ", M_n = " + std::to_string(in.m_n) + ")");
  const int d = in.d;
  const double dr = MetricSpec(d, in.p).d_root();
  const double theta = ball_volume_theta(d);
  const double n = static_cast<double>(in.n);
  const double match_ratio = 2.0 * in.m_n / in.r;

  Theorem1Terms out;
  out.c = std::pow(1.0 + 1.0 / (2.0 * std::pow(in.a_n, 1.0 / d)), d);
  out.epsilon = in.t / (dr * std::ldexp(1.0, d + 2) * in.a_n) + (2.0 - out.c) / 4.0 - match_ratio;
  out.epsilon_in_chernoff_range = out.epsilon > 0.0 && out.epsilon <= 1.5;

  out.term1 = 2.0 * n * std::exp(-in.a_n * out.epsilon * out.epsilon * (1.0 - match_ratio) / 3.0);

  const double shrunk = in.r - 2.0 * in.m_n;
  const double q = in.mode == BinomialParameter::AsPrinted ? theta * shrunk : theta * std::pow(shrunk, d);
  const double exponent = in.t / (dr * std::ldexp(1.0, d + 3)) + in.a_n * (2.0 - out.c) / 4.0;
  out.log_term2 = std::log(n) + n * std::log1p(q * (in.a - 1.0)) - exponent * std::log(in.a);
  out.term2 = std::exp(out.log_term2);
  out.term2_saturated = std::isinf(out.term2);

  out.term3 = dr * dr * std::ldexp(1.0, 2 * d + 6) * (theta + 2.0 * theta * in.a_n) / (n * n * in.t * in.t);
  out.total = out.term1 + out.term2 + out.term3;
  out.vacuous = out.epsilon <= 0.0 || !(out.total < 1.0);
  return out;
}

namespace {

nlohmann::ordered_json theorem_json(const Theorem1Terms& t) {
  nlohmann::ordered_json j;
  j["term1"] = t.term1;
  // JSON has no infinity; a saturated term is reported through log_term2.
  j["term2"] = t.term2_saturated ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(t.term2);
  j["term3"] = t.term3;
  j["total"] = t.term2_saturated ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(t.total);
  j["epsilon"] = t.epsilon;
  j["c"] = t.c;
  j["vacuous"] = t.vacuous;
  j["display_total"] = t.display_total();
  j["log_term2"] = t.log_term2;
  j["term2_saturated"] = t.term2_saturated;
  j["epsilon_in_chernoff_range"] = t.epsilon_in_chernoff_range;
  return j;
}

}  // namespace

nlohmann::ordered_json to_json(const BoundReport& report) {
  nlohmann::ordered_json j;
  j["lemma1"] = report.lemma1_bound;
  j["trace"] = report.lemma2_trace;
  j["lemma4"] = {
      {"t_degree", report.lemma4.t_degree},
      {"t_L", report.lemma4.t_L},
      {"t_aprime", report.lemma4.t_aprime},
      {"aggregate", report.lemma4.aggregate},
      {"t0", report.lemma4.t0},
      {"t1", report.lemma4.t1},
      {"levy_cubed", report.lemma4.levy_cubed},
  };
  j["lemma6"] = report.lemma6_variance_bound;
  j["theorem1"] = theorem_json(report.theorem1);
  j["theorem1_ball_volume"] = theorem_json(report.theorem1_ball_volume);
  j["epsilon"] = report.epsilon;
  j["c"] = report.c;
  j["a"] = report.a_parameter;
  j["t"] = report.t;
  return j;
}

TailEstimate binomial_tail_oracle(std::size_t n, double prob, double threshold, std::size_t trials,
                                  std::uint64_t seed) {
  if (!(prob >= 0.0 && prob <= 1.0)) throw Error(ErrorCode::InvalidArgument, "prob must lie in [0,1]");
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const double mean = static_cast<double>(n) * prob;

  // Inverse-CDF sampling from the exact pmf.
  std::vector<double> cdf(n + 1);
  if (prob == 0.0 || prob == 1.0) {
    std::fill(cdf.begin(), cdf.end(), 0.0);
    std::fill(cdf.begin() + (prob == 0.0 ? 0 : static_cast<std::ptrdiff_t>(n)), cdf.end(), 1.0);
  } else {
    const double log_p = std::log(prob), log_q = std::log1p(-prob);
    const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
    double acc = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double log_pmf = log_n_fact - std::lgamma(kk + 1.0) - std::lgamma(static_cast<double>(n - k) + 1.0) +
                             kk * log_p + (static_cast<double>(n) - kk) * log_q;
      acc += std::exp(log_pmf);
      cdf[k] = acc;
    }
    for (auto& v : cdf) v /= acc;
  }

  Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const double u = rng.uniform();
    auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    k = std::min(k, n);
    if (std::fabs(static_cast<double>(k) - mean) >= threshold) ++hits;
  }
  TailEstimate est;
  est.trials = trials;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
  return est;
}

double chernoff_binomial_bound(double eps, double mean) { return 2.0 * std::exp(-eps * eps * mean / 3.0); }

}  // namespace rgg

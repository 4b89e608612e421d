#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "rgg/bounds.hpp"
#include "rgg/dgg.hpp"
#include "rgg/error.hpp"
#include "rgg/geometry.hpp"
#include "rgg/graph.hpp"
#include "rgg/harness.hpp"
#include "rgg/io.hpp"
#include "rgg/levy.hpp"
#include "rgg/spectra.hpp"

namespace rgg::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  f << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

std::vector<std::string> without_out(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    kept.push_back(args[i]);
  }
  return kept;
}

// Records everything needed to rerun the command: the argument list minus the
// output directory. Timestamps live here and nowhere else.
void write_manifest(const fs::path& dir, const std::vector<std::string>& args, std::uint64_t seed) {
  json m;
  m["tool"] = "rggspec";
  m["version"] = kToolVersion;
  m["compiler"] = __VERSION__;
  m["command"] = args.empty() ? "" : args.front();
  m["args"] = without_out(args);
  m["seed"] = seed;
  m["timestamp"] = utc_timestamp();
  write_file(dir / "manifest.json", m.dump(2) + "\n");
}

double metric_exponent(const std::string& text) {
  try {
    return parse_p(text.c_str());
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::string p_label(double p) { return p == kInfinity ? "inf" : format_double(p); }

std::string eigen_csv(std::span<const double> values) {
  std::ostringstream ss;
  write_eigenvalues_csv(ss, values);
  return ss.str();
}

std::vector<double> load_eigenvalues(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read " + path.string());
  return read_eigenvalues_csv(f, path.string());
}

struct Options {
  // generate / spectrum / bounds / lemma6
  std::size_t n = 0;
  std::size_t side = 0;
  int d = 1;
  std::string p = "inf";
  double r = 0.0;
  std::uint64_t seed = 1;
  std::string out;
  // spectrum
  std::string input;
  std::string dgg;
  std::string method = "eig";
  bool plot = false;
  // compare
  std::string file_a, file_b;
  bool fig1 = false;
  bool oracle = false;
  double oracle_step = 1e-3;
  // bounds
  double t = 0.0;
  double a = 2.0;
  std::size_t trials = 100;
  std::string rule = "explicit";
  // replay
  std::string manifest;
};

int cmd_generate(const Options& o, CLI::App& sub, const std::vector<std::string>& args, std::ostream& out) {
  const bool has_n = sub.count("--n") > 0, has_side = sub.count("--N") > 0;
  if (has_n == has_side) throw UsageError("exactly one of --n (random sample) or --N (grid side) is required");
  const MetricSpec metric(o.d, metric_exponent(o.p));
  if (!(o.r > 0.0)) throw UsageError("--r must be positive");

  const PointSet points = has_side ? grid_points(o.side, o.d) : sample_uniform(o.n, o.d, o.seed);
  const AdjacencyMatrix adj = build_adjacency(points, o.r, metric);

  const fs::path dir(o.out);
  fs::create_directories(dir);
  std::ostringstream pts, edges;
  write_points_csv(pts, points);
  write_edge_list(edges, adj);
  write_file(dir / "points.csv", pts.str());
  write_file(dir / "edges.txt", edges.str());
  write_manifest(dir, args, o.seed);

  const DegreeSummary deg = degree_summary(adj, o.d, o.r);
  out << "n=" << points.size() << " edges=" << deg.edge_count << " mean_degree=" << format_double(deg.average_degree_empirical)
      << " a_n=" << format_double(deg.average_degree_theoretical) << "\n";
  return 0;
}

std::tuple<std::size_t, int, double> parse_dgg_triplet(const std::string& text) {
  std::stringstream ss(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  if (parts.size() != 3) throw UsageError("--dgg expects N,d,r");
  try {
    const long long side = std::stoll(parts[0]);
    const int d = std::stoi(parts[1]);
    const double r = std::stod(parts[2]);
    if (side < 1 || d < 1 || !(r > 0.0)) throw UsageError("--dgg values out of range");
    return {static_cast<std::size_t>(side), d, r};
  } catch (const std::logic_error&) {
    throw UsageError("--dgg expects N,d,r");
  }
}

int cmd_spectrum(const Options& o, CLI::App& sub, const std::vector<std::string>& args, std::ostream& out) {
  const bool has_input = !o.input.empty(), has_dgg = !o.dgg.empty();
  if (has_input == has_dgg) throw UsageError("exactly one of --input or --dgg is required");
  const double p = metric_exponent(o.p);

  std::vector<double> values;
  std::string title;
  if (has_dgg) {
    const auto [side, d, r] = parse_dgg_triplet(o.dgg);
    const MetricSpec metric(d, p);
    title = "lattice N=" + std::to_string(side) + " d=" + std::to_string(d) + " r=" + format_double(r);
    if (o.method == "eig") {
      values = sym_eigenvalues(build_adjacency(grid_points(side, d), r, metric));
    } else {
      if (!metric.is_inf())
        throw Error(ErrorCode::ClosedFormRequiresLinf, "--method " + o.method + " needs --p inf");
      const DggSpec spec = make_dgg_spec(side, d, r);
      values = o.method == "closed" ? dgg_eigenvalues_closed_form(spec) : dgg_eigenvalues_dft(spec);
    }
  } else {
    if (sub.count("--r") == 0) throw UsageError("--input requires --r");
    if (o.method != "eig") throw UsageError("--method " + o.method + " applies to --dgg lattices only");
    std::ifstream f(o.input);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read " + o.input);
    const PointSet points = read_points_csv(f, o.input);
    if (!(o.r > 0.0)) throw UsageError("--r must be positive");
    const MetricSpec metric(points.d(), p);
    values = sym_eigenvalues(build_adjacency(points, o.r, metric));
    title = "RGG n=" + std::to_string(points.size()) + " r=" + format_double(o.r);
  }

  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_file(dir / "eigenvalues.csv", eigen_csv(values));
  if (o.plot) {
    const CdfSeries series[] = {{title, "#1f77b4", values}};
    write_file(dir / "cdf.svg", svg_step_plot(series, "Spectral CDF"));
  }
  write_manifest(dir, args, o.seed);
  out << "n=" << values.size() << " min=" << format_double(values.front()) << " max=" << format_double(values.back())
      << "\n";
  return 0;
}

int cmd_compare(const Options& o, CLI::App& sub, const std::vector<std::string>& args, std::ostream& out) {
  const bool has_files = !o.file_a.empty() || !o.file_b.empty();
  if (has_files == o.fig1) throw UsageError("use either --a FILE --b FILE or --fig1");
  if (has_files && (o.file_a.empty() || o.file_b.empty())) throw UsageError("--a and --b are both required");
  const fs::path dir(o.out);
  fs::create_directories(dir);

  json report;
  std::shared_ptr<const Esd> fa, fb;
  std::optional<double> trace;
  if (o.fig1) {
    const std::size_t n = sub.count("--n") ? o.n : 2000;
    const Figure1Result fig = figure1_experiment(n, o.d, o.seed, 401, true);
    fa = fig.rgg;
    fb = fig.dgg;
    trace = fig.trace_bound;
    report["mode"] = "figure1";
    report["n"] = fig.n;
    report["d"] = fig.d;
    report["r"] = fig.r;
    report["a_n"] = fig.a_n;
    report["m_n"] = *fig.m_n;
    report["two_m_n_over_r"] = 2.0 * *fig.m_n / fig.r;

    std::ostringstream table;
    table << "x,rgg_cdf,dgg_cdf\n";
    for (std::size_t i = 0; i < fig.x.size(); ++i)
      table << format_double(fig.x[i]) << ',' << format_double(fig.rgg_cdf[i]) << ',' << format_double(fig.dgg_cdf[i])
            << '\n';
    write_file(dir / "figure1.csv", table.str());
    write_file(dir / "eigenvalues_rgg.csv", eigen_csv(fa->eigenvalues()));
    write_file(dir / "eigenvalues_dgg.csv", eigen_csv(fb->eigenvalues()));
  } else {
    fa = std::make_shared<const Esd>(load_eigenvalues(o.file_a));
    fb = std::make_shared<const Esd>(load_eigenvalues(o.file_b));
    report["mode"] = "files";
    report["a"] = fs::path(o.file_a).filename().string();
    report["b"] = fs::path(o.file_b).filename().string();
  }

  const LevyResult levy = levy_distance(*fa, *fb);
  const double cubed = levy.distance * levy.distance * levy.distance;
  report["levy_distance"] = levy.distance;
  report["levy_cubed"] = cubed;
  report["certificate_x"] = levy.certificate_x;
  report["kolmogorov"] = kolmogorov_distance(*fa, *fb);
  report["trace_bound"] = trace ? json(*trace) : json(nullptr);
  if (o.oracle) {
    const double grid = levy_distance_oracle(*fa, *fb, o.oracle_step);
    report["oracle"] = {{"grid_step", o.oracle_step}, {"levy_distance", grid}, {"difference", std::fabs(grid - levy.distance)}};
  }
  if (o.plot) {
    const CdfSeries series[] = {{o.fig1 ? "RGG" : "A", "#1f77b4", fa->eigenvalues()},
                                {o.fig1 ? "lattice (analytic)" : "B", "#d62728", fb->eigenvalues()}};
    write_file(dir / (o.fig1 ? "figure1.svg" : "compare.svg"), svg_step_plot(series, "Spectral CDFs"));
  }
  write_file(dir / "compare.json", report.dump(2) + "\n");
  write_manifest(dir, args, o.seed);

  out << "levy_distance=" << format_double(levy.distance) << " levy_cubed=" << format_double(cubed)
      << " trace_bound=" << (trace ? format_double(*trace) : std::string("n/a"));
  if (o.oracle) out << " oracle=" << format_double(report["oracle"]["levy_distance"].get<double>());
  out << "\n";
  return 0;
}

int cmd_bounds(const Options& o, CLI::App& sub, const std::vector<std::string>& args, std::ostream& out) {
  ExperimentConfig cfg;
  cfg.side = o.side;
  cfg.d = o.d;
  cfg.p = metric_exponent(o.p);
  cfg.t = o.t;
  cfg.a = o.a;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  if (o.rule == "explicit") {
    if (sub.count("--r") == 0) throw UsageError("--rule explicit requires --r");
    cfg.rule = RadiusRule::Explicit;
    cfg.r = o.r;
  } else if (o.rule == "logsqrt") {
    cfg.rule = RadiusRule::LogOverSqrt;
  } else {
    throw UsageError("--rule must be explicit or logsqrt");
  }
  if (!(o.t > 0.0)) throw UsageError("--t must be positive");
  if (!(o.a >= 1.0)) throw UsageError("--a must be >= 1");
  if (o.trials < 1) throw UsageError("--trials must be >= 1");
  cfg.validate();

  const Experiment exp(cfg);
  const auto trials = exp.run_trials(cfg.trials);
  const ProbabilityEstimate prob = estimate_probability(trials, cfg.t);
  const Theorem1Envelope printed = theorem1_envelope(cfg, trials, cfg.t, BinomialParameter::AsPrinted);
  const Theorem1Envelope ball = theorem1_envelope(cfg, trials, cfg.t, BinomialParameter::BallVolume);

  BoundReport rep;
  rep.lemma1_bound = lemma1_degree_bound(cfg.d, cfg.p, cfg.average_degree());
  rep.lemma2_trace = trials.front().trace_bound;
  rep.lemma4 = trials.front().lemma4;
  rep.lemma6_variance_bound = lemma6_variance_bound(cfg.d, cfg.average_degree());
  rep.theorem1 = printed.terms;
  rep.theorem1_ball_volume = ball.terms;
  rep.epsilon = printed.terms.epsilon;
  rep.c = printed.terms.c;
  rep.a_parameter = cfg.a;
  rep.t = cfg.t;

  double m_min = trials.front().m_n, m_max = m_min, m_sum = 0.0;
  for (const auto& tr : trials) {
    m_min = std::min(m_min, tr.m_n);
    m_max = std::max(m_max, tr.m_n);
    m_sum += tr.m_n;
  }

  json j = to_json(rep);
  j["config"] = {{"N", cfg.side}, {"d", cfg.d}, {"p", p_label(cfg.p)}, {"n", cfg.order()}, {"r", cfg.radius()},
                 {"a_n", cfg.average_degree()}, {"t", cfg.t}, {"a", cfg.a}, {"trials", cfg.trials},
                 {"seed", cfg.seed}, {"dgg_closed_form", exp.dgg_closed_form()}};
  j["monte_carlo"] = {{"p_hat", prob.p_hat}, {"stderr", prob.std_error}, {"trials", prob.trials}};
  j["m_n"] = {{"min", m_min}, {"mean", m_sum / static_cast<double>(trials.size())}, {"max", m_max},
              {"used_for_theorem1", printed.m_n_used}, {"radius_too_small", printed.radius_too_small}};
  j["dominated"] = printed.terms.vacuous ? json(nullptr)
                                         : json(prob.p_hat <= printed.terms.total + 3.0 * prob.std_error);

  const fs::path dir(o.out);
  fs::create_directories(dir);
  std::ostringstream table;
  table << "trial,seed,levy_cubed,trace_bound,m_n,xi_n\n";
  for (std::size_t i = 0; i < trials.size(); ++i)
    table << i << ',' << trials[i].trial_seed << ',' << format_double(trials[i].levy_cubed) << ','
          << format_double(trials[i].trace_bound) << ',' << format_double(trials[i].m_n) << ',' << trials[i].xi_n
          << '\n';
  write_file(dir / "trials.csv", table.str());
  write_file(dir / "bounds.json", j.dump(2) + "\n");
  write_manifest(dir, args, o.seed);

  out << "p_hat=" << format_double(prob.p_hat) << " stderr=" << format_double(prob.std_error)
      << " theorem1_total=" << format_double(printed.terms.total) << (printed.terms.vacuous ? " (vacuous)" : "")
      << "\n";
  return 0;
}

int cmd_lemma6(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const MetricSpec metric(o.d, metric_exponent(o.p));
  if (o.n < 2) throw UsageError("--n must be >= 2");
  if (!(o.r > 0.0)) throw UsageError("--r must be positive");
  if (o.trials < 2) throw UsageError("--trials must be >= 2");
  const EdgeCountStats s = edge_count_variance(o.n, metric, o.r, o.trials, o.seed);
  const fs::path dir(o.out);
  fs::create_directories(dir);
  std::ostringstream table;
  table << "n,d,p,r,a_n,trials,mean_edges,var_edges,printed_bound,ratio\n";
  table << o.n << ',' << o.d << ',' << p_label(metric.p()) << ',' << format_double(o.r) << ',' << format_double(s.a_n)
        << ',' << s.trials << ',' << format_double(s.mean) << ',' << format_double(s.variance) << ','
        << format_double(s.printed_bound) << ',' << format_double(s.variance / s.printed_bound) << '\n';
  write_file(dir / "lemma6.csv", table.str());
  write_manifest(dir, args, o.seed);
  out << "var_edges=" << format_double(s.variance) << " printed_bound=" << format_double(s.printed_bound) << "\n";
  return 0;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_replay(const Options& o, std::ostream& out, std::ostream& err) {
  const json m = json::parse(read_file(o.manifest));
  std::vector<std::string> args = m.at("args").get<std::vector<std::string>>();
  if (args.empty() || args.front() == "replay") throw UsageError("manifest does not describe a replayable command");
  args.push_back("--out");
  args.push_back(o.out);
  return dispatch(args, out, err);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of random geometric graphs on the torus", "rggspec"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Options o;

  auto add_metric = [&](CLI::App* s) {
    s->add_option("--d", o.d, "dimension")->check(CLI::PositiveNumber);
    s->add_option("--p", o.p, "l_p exponent (number >= 1 or 'inf')");
  };

  auto* gen = app.add_subcommand("generate", "Write points.csv and edges.txt for a sample or grid");
  gen->add_option("--n", o.n, "random sample size")->check(CLI::PositiveNumber);
  gen->add_option("--N", o.side, "grid side (n = N^d)")->check(CLI::PositiveNumber);
  add_metric(gen);
  gen->add_option("--r", o.r, "connection radius")->required();
  gen->add_option("--seed", o.seed, "sampling seed");
  gen->add_option("--out", o.out, "output directory")->required();

  auto* spec = app.add_subcommand("spectrum", "Adjacency eigenvalues of a point file or a lattice");
  spec->add_option("--input", o.input, "points CSV");
  spec->add_option("--dgg", o.dgg, "lattice N,d,r");
  spec->add_option("--p", o.p, "l_p exponent (number >= 1 or 'inf')");
  spec->add_option("--r", o.r, "connection radius for --input");
  spec->add_option("--method", o.method, "eig | closed | dft")->check(CLI::IsMember({"eig", "closed", "dft"}));
  spec->add_flag("--plot", o.plot, "also write cdf.svg");
  spec->add_option("--out", o.out, "output directory")->required();

  auto* cmp = app.add_subcommand("compare", "Levy distance between two spectra");
  cmp->add_option("--a", o.file_a, "first eigenvalue CSV");
  cmp->add_option("--b", o.file_b, "second eigenvalue CSV");
  cmp->add_flag("--fig1", o.fig1, "RGG vs lattice at r = log(n)/sqrt(n)");
  cmp->add_option("--n", o.n, "vertex count for --fig1 (default 2000)")->check(CLI::PositiveNumber);
  cmp->add_option("--d", o.d, "dimension for --fig1")->check(CLI::PositiveNumber);
  cmp->add_option("--seed", o.seed, "sampling seed for --fig1");
  cmp->add_flag("--oracle", o.oracle, "also run the grid-scan oracle");
  cmp->add_option("--oracle-step", o.oracle_step, "oracle grid step")->check(CLI::PositiveNumber);
  cmp->add_flag("--plot", o.plot, "also write an SVG of both CDFs");
  cmp->add_option("--out", o.out, "output directory")->required();

  auto* bnd = app.add_subcommand("bounds", "Evaluate every bound and the Monte Carlo P{L^3 > t}");
  bnd->add_option("--N", o.side, "grid side (n = N^d)")->required()->check(CLI::PositiveNumber);
  add_metric(bnd);
  bnd->add_option("--r", o.r, "connection radius");
  bnd->add_option("--rule", o.rule, "explicit | logsqrt");
  bnd->add_option("--t", o.t, "threshold on L^3")->required();
  bnd->add_option("--a", o.a, "generating-function parameter (>= 1)");
  bnd->add_option("--trials", o.trials, "Monte Carlo trials");
  bnd->add_option("--seed", o.seed, "master seed");
  bnd->add_option("--out", o.out, "output directory")->required();

  auto* l6 = app.add_subcommand("lemma6", "Monte Carlo edge-count variance vs the printed bound");
  l6->add_option("--n", o.n, "sample size")->required();
  add_metric(l6);
  l6->add_option("--r", o.r, "connection radius")->required();
  l6->add_option("--trials", o.trials, "Monte Carlo trials");
  l6->add_option("--seed", o.seed, "master seed");
  l6->add_option("--out", o.out, "output directory")->required();

  auto* rep = app.add_subcommand("replay", "Rerun a command from its manifest.json");
  rep->add_option("--manifest", o.manifest, "manifest path")->required()->check(CLI::ExistingFile);
  rep->add_option("--out", o.out, "output directory")->required();

  std::vector<std::string> argv_store{"rggspec"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  CLI::App* used = app.get_subcommands().front();
  try {
    if (used == gen) return cmd_generate(o, *gen, args, out);
    if (used == spec) return cmd_spectrum(o, *spec, args, out);
    if (used == cmp) return cmd_compare(o, *cmp, args, out);
    if (used == bnd) return cmd_bounds(o, *bnd, args, out);
    if (used == l6) return cmd_lemma6(o, args, out);
    return cmd_replay(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << used->help();
    return 2;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rgg::cli

#include <sstream>

#include "cli_helpers.hpp"
#include "doctest.h"
#include "json.hpp"
#include "rgg/spectra.hpp"

using cli_test::data_files;
using cli_test::invoke;
using cli_test::slurp;
using cli_test::TempDir;

namespace {

std::vector<double> eigenvalues_in(const std::string& path) {
  std::istringstream in(slurp(path));
  return rgg::read_eigenvalues_csv(in, path);
}

}  // namespace

TEST_CASE("generate writes the cycle on four lattice points") {
  TempDir tmp;
  const auto res = invoke({"generate", "--N", "4", "--d", "1", "--p", "inf", "--r", "0.25", "--out", tmp.sub("g")});
  REQUIRE(res.code == 0);
  CHECK(slurp(tmp.path() / "g" / "edges.txt") == "0 1\n0 3\n1 2\n2 3\n");
  CHECK(slurp(tmp.path() / "g" / "points.csv") == "x1\n0\n0.25\n0.5\n0.75\n");
  const auto manifest = nlohmann::json::parse(slurp(tmp.path() / "g" / "manifest.json"));
  CHECK(manifest["command"] == "generate");
  CHECK(manifest.contains("timestamp"));
}

TEST_CASE("usage errors exit with status 2") {
  TempDir tmp;
  auto res = invoke({"generate", "--N", "4", "--d", "1", "--out", tmp.sub("g")});
  CHECK(res.code == 2);
  CHECK(res.err.find("--r") != std::string::npos);
  CHECK(res.out.empty());
  CHECK(invoke({"generate", "--N", "4", "--n", "4", "--r", "0.1", "--out", tmp.sub("g")}).code == 2);
  CHECK(invoke({"generate", "--r", "0.1", "--out", tmp.sub("g")}).code == 2);
  CHECK(invoke({"generate", "--N", "4", "--r", "0.1", "--p", "0.5", "--out", tmp.sub("g")}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"spectrum", "--out", tmp.sub("s")}).code == 2);
  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("generate") != std::string::npos);
}

TEST_CASE("generate is deterministic for a fixed seed") {
  TempDir tmp;
  const std::vector<std::string> base{"generate", "--n", "200", "--d", "2", "--p", "2", "--r", "0.1", "--seed", "9"};
  auto first = base, second = base;
  first.insert(first.end(), {"--out", tmp.sub("a")});
  second.insert(second.end(), {"--out", tmp.sub("b")});
  REQUIRE(invoke(first).code == 0);
  REQUIRE(invoke(second).code == 0);
  CHECK(data_files(tmp.path() / "a") == data_files(tmp.path() / "b"));
}

TEST_CASE("spectrum methods agree on the lattice") {
  TempDir tmp;
  REQUIRE(invoke({"spectrum", "--dgg", "4,1,0.25", "--method", "closed", "--out", tmp.sub("c")}).code == 0);
  REQUIRE(invoke({"spectrum", "--dgg", "4,1,0.25", "--method", "eig", "--out", tmp.sub("e")}).code == 0);
  REQUIRE(invoke({"spectrum", "--dgg", "4,1,0.25", "--method", "dft", "--plot", "--out", tmp.sub("f")}).code == 0);
  const auto closed = eigenvalues_in(tmp.sub("c/eigenvalues.csv"));
  const auto eig = eigenvalues_in(tmp.sub("e/eigenvalues.csv"));
  const auto dft = eigenvalues_in(tmp.sub("f/eigenvalues.csv"));
  const double want[] = {-2, 0, 0, 2};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::fabs(closed[i] - want[i]) < 1e-12);
    CHECK(std::fabs(eig[i] - closed[i]) <= 1e-8);
    CHECK(std::fabs(dft[i] - closed[i]) <= 1e-9);
  }
  CHECK(slurp(tmp.sub("f/cdf.svg")).find("<svg") != std::string::npos);
}

TEST_CASE("closed form requires the max metric") {
  TempDir tmp;
  const auto res = invoke({"spectrum", "--dgg", "4,1,0.25", "--method", "closed", "--p", "2", "--out", tmp.sub("c")});
  CHECK(res.code == 1);
  CHECK(res.err.find("CLOSED_FORM_REQUIRES_LINF") != std::string::npos);
}

TEST_CASE("spectrum of a generated point file") {
  TempDir tmp;
  REQUIRE(invoke({"generate", "--n", "50", "--d", "1", "--r", "0.1", "--seed", "4", "--out", tmp.sub("g")}).code == 0);
  REQUIRE(invoke({"spectrum", "--input", tmp.sub("g/points.csv"), "--r", "0.1", "--out", tmp.sub("s")}).code == 0);
  const auto values = eigenvalues_in(tmp.sub("s/eigenvalues.csv"));
  CHECK(values.size() == 50);
  CHECK(std::ranges::is_sorted(values));
  CHECK(invoke({"spectrum", "--input", tmp.sub("g/points.csv"), "--out", tmp.sub("s2")}).code == 2);
}

TEST_CASE("compare identical files and malformed input") {
  TempDir tmp;
  REQUIRE(invoke({"spectrum", "--dgg", "9,1,0.25", "--out", tmp.sub("s")}).code == 0);
  const std::string file = tmp.sub("s/eigenvalues.csv");
  const auto res = invoke({"compare", "--a", file, "--b", file, "--oracle", "--out", tmp.sub("c")});
  REQUIRE(res.code == 0);
  const auto j = nlohmann::json::parse(slurp(tmp.path() / "c" / "compare.json"));
  CHECK(j["levy_distance"].get<double>() == 0.0);
  CHECK(j["oracle"]["difference"].get<double>() <= 2e-3);

  {
    std::ofstream bad(tmp.sub("bad.csv"));
    bad << "eigenvalue\n1\n2\nnot-a-number\n";
  }
  const auto err = invoke({"compare", "--a", file, "--b", tmp.sub("bad.csv"), "--out", tmp.sub("c2")});
  CHECK(err.code == 1);
  CHECK(err.err.find("line 4") != std::string::npos);
}

TEST_CASE("bounds report fields and degenerate parameter") {
  TempDir tmp;
  auto res = invoke({"bounds", "--N", "8", "--d", "1", "--r", "0.3", "--t", "1e9", "--trials", "10", "--out",
                     tmp.sub("b")});
  REQUIRE(res.code == 0);
  const auto j = nlohmann::json::parse(slurp(tmp.path() / "b" / "bounds.json"));
  CHECK(j["monte_carlo"]["p_hat"].get<double>() == 0.0);
  CHECK(j["theorem1"]["term3"].get<double>() < 1e-12);
  for (const char* key : {"lemma1", "trace", "lemma4", "lemma6", "theorem1", "m_n", "config"}) CHECK(j.contains(key));
  CHECK(slurp(tmp.path() / "b" / "trials.csv").rfind("trial,seed,levy_cubed,trace_bound,m_n,xi_n\n", 0) == 0);

  res = invoke({"bounds", "--N", "8", "--d", "1", "--r", "0.3", "--t", "1", "--a", "1", "--trials", "5", "--out",
                tmp.sub("b1")});
  REQUIRE(res.code == 0);
  const auto j1 = nlohmann::json::parse(slurp(tmp.path() / "b1" / "bounds.json"));
  CHECK(j1["theorem1"]["term2"].get<double>() == doctest::Approx(8.0));
  CHECK(invoke({"bounds", "--N", "8", "--t", "1", "--out", tmp.sub("b2")}).code == 2);  // no radius
}

TEST_CASE("replay reproduces every table byte for byte") {
  TempDir tmp;
  const std::vector<std::vector<std::string>> commands = {
      {"generate", "--n", "120", "--d", "2", "--r", "0.15", "--seed", "5", "--out", tmp.sub("run0")},
      {"spectrum", "--dgg", "6,2,0.3", "--method", "dft", "--plot", "--out", tmp.sub("run1")},
      {"bounds", "--N", "8", "--d", "2", "--p", "2", "--r", "0.3", "--t", "0.5", "--trials", "6", "--seed", "11",
       "--out", tmp.sub("run2")},
      {"lemma6", "--n", "100", "--d", "1", "--r", "0.05", "--trials", "50", "--out", tmp.sub("run3")},
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    REQUIRE(invoke(commands[i]).code == 0);
    const std::string dir = tmp.sub("run" + std::to_string(i));
    const std::string again = tmp.sub("replay" + std::to_string(i));
    REQUIRE(invoke({"replay", "--manifest", dir + "/manifest.json", "--out", again}).code == 0);
    CHECK(data_files(dir) == data_files(again));
    CHECK_FALSE(data_files(dir).empty());
  }
}

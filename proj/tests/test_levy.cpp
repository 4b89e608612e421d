#include <cmath>

#include "doctest.h"
#include "rgg/error.hpp"
#include "rgg/graph.hpp"
#include "rgg/levy.hpp"
#include "rgg/random.hpp"
#include "rgg/spectra.hpp"

using namespace rgg;

namespace {

Esd random_esd(Rng& rng, std::size_t max_atoms, double scale) {
  const std::size_t atoms = 1 + rng.below(max_atoms);
  std::vector<double> v(atoms);
  for (auto& x : v) x = scale * (2.0 * rng.uniform() - 1.0);
  // Occasional ties exercise multiplicities.
  if (atoms > 2 && rng.uniform() < 0.3) v[1] = v[0];
  return Esd(v);
}

AdjacencyMatrix random_adjacency(std::size_t n, double density, Rng& rng) {
  AdjacencyMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform() < density) a.connect(i, j);
  return a;
}

}  // namespace

TEST_CASE("distance of a distribution to itself") {
  const Esd f({-1, 0, 0, 3});
  CHECK(levy_distance(f, f).distance == 0.0);
  CHECK(levy_distance_oracle(f, f, 1e-3) == doctest::Approx(1e-3));
}

TEST_CASE("point masses") {
  const Esd a({0.0}), b({0.5});
  CHECK(levy_distance(a, b).distance == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(std::fabs(levy_distance_oracle(a, b, 1e-3) - 0.5) <= 1e-3);
  // Far apart masses saturate at the vertical gap of one.
  CHECK(levy_distance(Esd({0.0}), Esd({10.0})).distance == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(levy_distance(Esd({1, 0}), Esd({0, 0})).distance == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("feasibility predicate is monotone and brackets the distance") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const Esd f = random_esd(rng, 12, 2.0), g = random_esd(rng, 12, 2.0);
    const double eps = levy_distance(f, g, 1e-10).distance;
    CHECK(levy_feasible(f, g, eps + 1e-9));
    if (eps > 1e-8) CHECK_FALSE(levy_feasible(f, g, eps - 1e-8));
  }
}

TEST_CASE("exact routine agrees with the grid-scan oracle") {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const Esd f = random_esd(rng, 10, 1.5), g = random_esd(rng, 10, 1.5);
    const double exact = levy_distance(f, g).distance;
    CHECK(std::fabs(levy_distance_oracle(f, g, 1e-3) - exact) <= 2e-3);
  }
}

TEST_CASE("metric properties on random triples") {
  Rng rng(43);
  const double tol = 1e-9;
  for (int trial = 0; trial < 100; ++trial) {
    const Esd f = random_esd(rng, 15, 3.0), g = random_esd(rng, 15, 3.0), h = random_esd(rng, 15, 3.0);
    const double fg = levy_distance(f, g, tol).distance, gf = levy_distance(g, f, tol).distance;
    CHECK(std::fabs(fg - gf) <= 2 * tol);
    CHECK(levy_distance(f, f, tol).distance <= tol);
    CHECK(fg <= levy_distance(f, h, tol).distance + levy_distance(h, g, tol).distance + 3 * tol);
    CHECK(fg <= kolmogorov_distance(f, g) + tol);
  }
}

TEST_CASE("common shift leaves the distance unchanged") {
  Rng rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    const Esd f = random_esd(rng, 10, 1.0), g = random_esd(rng, 10, 1.0);
    const double shift = 0.5 * std::floor(20.0 * rng.uniform() - 10.0);  // exact in binary
    std::vector<double> fs(f.eigenvalues().begin(), f.eigenvalues().end());
    std::vector<double> gs(g.eigenvalues().begin(), g.eigenvalues().end());
    for (auto& x : fs) x += shift;
    for (auto& x : gs) x += shift;
    CHECK(std::fabs(levy_distance(Esd(fs), Esd(gs)).distance - levy_distance(f, g).distance) <= 2e-9);
  }
}

TEST_CASE("Kolmogorov distance") {
  CHECK(kolmogorov_distance(Esd({0.0}), Esd({1.0})) == 1.0);
  CHECK(kolmogorov_distance(Esd({0, 1}), Esd({0, 2})) == 0.5);
  CHECK(kolmogorov_distance(Esd({1, 2, 3}), Esd({3, 2, 1})) == 0.0);
}

TEST_CASE("trace bound on explicit matrices") {
  SymMatrix a(2), zero(2);
  a(0, 0) = 1.0;
  CHECK(trace_bound(a, zero) == 0.5);
  CHECK(trace_bound(a, a) == 0.0);
  const double l = levy_distance(Esd(sym_eigenvalues(a)), Esd(sym_eigenvalues(zero))).distance;
  CHECK(l * l * l == doctest::Approx(0.125).epsilon(1e-7));
  CHECK(l * l * l <= 0.5);
  CHECK_THROWS_AS(trace_bound(SymMatrix(2), SymMatrix(3)), Error);
}

TEST_CASE("trace bound on adjacency matrices counts differing entries") {
  Rng rng(45);
  const AdjacencyMatrix a = random_adjacency(20, 0.3, rng), b = random_adjacency(20, 0.3, rng);
  std::size_t hamming = 0;
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) hamming += a(i, j) != b(i, j);
  CHECK(trace_bound(a, b) == doctest::Approx(static_cast<double>(hamming) / 20.0));
  CHECK(trace_bound(a, b) == doctest::Approx(trace_bound(SymMatrix::from_adjacency(a), SymMatrix::from_adjacency(b))));
}

TEST_CASE("cubed distance never exceeds the trace bound") {
  Rng rng(46);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(40);
    const AdjacencyMatrix a = random_adjacency(n, rng.uniform(), rng), b = random_adjacency(n, rng.uniform(), rng);
    const double l = levy_distance(Esd(sym_eigenvalues(a)), Esd(sym_eigenvalues(b)), 1e-12).distance;
    CHECK(l * l * l <= trace_bound(a, b) + 1e-9);
  }
}

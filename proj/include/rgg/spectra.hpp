#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rgg/graph.hpp"

namespace rgg {

/// Dense real symmetric matrix, row-major.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  SymMatrix(std::size_t n, std::vector<double> values);

  static SymMatrix from_adjacency(const AdjacencyMatrix& a);

  std::size_t order() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<const double> values() const noexcept { return a_; }
  std::vector<double>& storage() noexcept { return a_; }

  /// Largest |a_ij - a_ji|.
  double asymmetry() const;

 private:
  std::size_t n_;
  std::vector<double> a_;
};

/// Largest order accepted by the dense solvers.
inline constexpr std::size_t kMaxDenseOrder = 4096;

/// Dense symmetric eigenvalues (Eigen's tridiagonal QR). Ascending.
std::vector<double> sym_eigenvalues(const SymMatrix& a, double symmetry_tol = 1e-12);
std::vector<double> sym_eigenvalues(const AdjacencyMatrix& a);

/// Cyclic Jacobi rotations on the full matrix. Slow; used as a test oracle.
std::vector<double> sym_eigenvalues_jacobi(const SymMatrix& a, double symmetry_tol = 1e-12);


/// Empirical spectral distribution: step CDF F(x) = #{lambda_i <= x} / n.
class Esd {
 public:
  /// Sorted copy; throws on empty input or NaN.
  explicit Esd(std::vector<double> values);

  std::span<const double> eigenvalues() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  /// Fraction of atoms <= x.
  double operator()(double x) const;
  /// Fraction of atoms < x (left limit).
  double left(double x) const;

 private:
  std::vector<double> values_;
};

inline Esd esd_from_eigenvalues(std::vector<double> v) { return Esd(std::move(v)); }
inline double esd_eval(const Esd& f, double x) { return f(x); }

/// Header "eigenvalue", then one value per line with 17 significant digits.
void write_eigenvalues_csv(std::ostream& out, std::span<const double> values);

/// Accepts the format above (header optional). Throws ParseError naming the line.
std::vector<double> read_eigenvalues_csv(std::istream& in, const std::string& source = "<stream>");

}  // namespace rgg

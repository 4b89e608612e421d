#include "rgg/spectra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "rgg/error.hpp"
#include "rgg/io.hpp"

namespace rgg {

SymMatrix::SymMatrix(std::size_t n, std::vector<double> values) : n_(n), a_(std::move(values)) {
  if (a_.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "value count is not n*n");
}

SymMatrix SymMatrix::from_adjacency(const AdjacencyMatrix& a) {
  const std::size_t n = a.order();
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = a.row(i);
    for (std::size_t j = 0; j < n; ++j) out.a_[i * n + j] = row[j];
  }
  return out;
}

double SymMatrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) worst = std::max(worst, std::fabs(a_[i * n_ + j] - a_[j * n_ + i]));
  return worst;
}

namespace {

void check_solver_input(const SymMatrix& a, double symmetry_tol) {
  if (a.order() == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
  if (a.order() > kMaxDenseOrder)
    throw Error(ErrorCode::SizeOverflow, "order " + std::to_string(a.order()) + " exceeds the dense ceiling of " +
                                             std::to_string(kMaxDenseOrder));
  for (double v : a.values())
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  const double asym = a.asymmetry();
  if (asym > symmetry_tol)
    throw Error(ErrorCode::NotSymmetric, "asymmetry " + std::to_string(asym) + " exceeds tolerance");
}

}  // namespace

std::vector<double> sym_eigenvalues(const SymMatrix& a, double symmetry_tol) {
  check_solver_input(a, symmetry_tol);
  const auto n = static_cast<Eigen::Index>(a.order());
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(a.values().data(),
                                                                                                   n, n);
  // Householder tridiagonalization plus implicit symmetric QR, reading the
  // lower triangle only.
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::IterationFailure,
                "symmetric QR did not converge for a matrix of order " + std::to_string(a.order()));
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> sym_eigenvalues(const AdjacencyMatrix& a) {
  return sym_eigenvalues(SymMatrix::from_adjacency(a), 0.0);
}

std::vector<double> sym_eigenvalues_jacobi(const SymMatrix& input, double symmetry_tol) {
  check_solver_input(input, symmetry_tol);
  const std::size_t n = input.order();
  std::vector<double> a(input.values().begin(), input.values().end());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  double total = 0.0;
  for (double v : a) total += v * v;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off <= 1e-30 * total || off == 0.0) {
      std::vector<double> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = at(i, i);
      std::sort(out.begin(), out.end());
      return out;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  throw Error(ErrorCode::IterationFailure, "Jacobi sweeps did not converge");
}

Esd::Esd(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::InvalidArgument, "spectral distribution needs at least one atom");
  for (double v : values_)
    if (std::isnan(v)) throw Error(ErrorCode::InvalidArgument, "NaN eigenvalue");
  std::stable_sort(values_.begin(), values_.end());
}

double Esd::operator()(double x) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double Esd::left(double x) const {
  const auto it = std::lower_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

void write_eigenvalues_csv(std::ostream& out, std::span<const double> values) {
  out << "eigenvalue\n";
  for (double v : values) out << format_double(v) << '\n';
}

std::vector<double> read_eigenvalues_csv(std::istream& in, const std::string& source) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line == "eigenvalue") continue;
    double v = 0.0;
    const char* first = line.data();
    const char* last = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || std::isnan(v))
      throw Error(ErrorCode::ParseError, source + ": line " + std::to_string(lineno) + ": not a number: '" + line + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, source + ": no eigenvalues");
  return out;
}

}  // namespace rgg

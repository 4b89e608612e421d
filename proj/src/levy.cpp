#include "rgg/levy.hpp"

#include <algorithm>
#include <cmath>

#include "rgg/error.hpp"

namespace rgg {

// Both sides of the sandwich are right-continuous step functions of x, so
// each violation set is a union of half-open intervals that begin at a jump
// of F(x -/+ eps) or of G. Checking the right-continuous values at those
// jump points is therefore exact.
bool levy_feasible(const Esd& f, const Esd& g, double eps, double* violation_x) {
  auto fail = [&](double x) {
    if (violation_x) *violation_x = x;
    return false;
  };
  for (double a : f.eigenvalues()) {
    // Lower side at x = a + eps, where F(x - eps) = F(a).
    const double x_lo = a + eps;
    if (f(a) - eps > g(x_lo)) return fail(x_lo);
    // Upper side at x = a - eps, where F(x + eps) = F(a).
    const double x_hi = a - eps;
    if (g(x_hi) > f(a) + eps) return fail(x_hi);
  }
  for (double b : g.eigenvalues()) {
    const double gb = g(b);
    if (f(b - eps) - eps > gb) return fail(b);
    if (gb > f(b + eps) + eps) return fail(b);
  }
  return true;
}

LevyResult levy_distance(const Esd& f, const Esd& g, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  LevyResult result;
  result.certificate_x = f.min();
  if (levy_feasible(f, g, 0.0, &result.certificate_x)) return result;

  const double spread = std::max(f.max(), g.max()) - std::min(f.min(), g.min());
  double lo = 0.0;
  double hi = spread + 1.0;
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    double x = 0.0;
    if (levy_feasible(f, g, mid, &x)) {
      hi = mid;
    } else {
      lo = mid;
      result.certificate_x = x;
    }
  }
  result.distance = hi;
  return result;
}

double levy_distance_oracle(const Esd& f, const Esd& g, double grid_step) {
  if (!(grid_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  const double low = std::min(f.min(), g.min());
  const double high = std::max(f.max(), g.max());
  const double spread = high - low;
  const double pad = spread + grid_step;
  const double h = 0.5 * grid_step;
  const auto scan_points = static_cast<std::size_t>(std::ceil((high - low + 2.0 * pad) / h)) + 1;

  auto passes = [&](double eps) {
    for (std::size_t s = 0; s < scan_points; ++s) {
      const double x = low - pad + static_cast<double>(s) * h;
      const double gx = g(x);
      if (f(x - eps) - eps > gx || gx > f(x + eps) + eps) return false;
    }
    return true;
  };

  // eps = 1 always passes, so the search tops out at ceil(1 / step).
  std::size_t lo = 0;  // invariant: lo * step fails (or lo == 0)
  std::size_t hi = static_cast<std::size_t>(std::ceil(1.0 / grid_step));
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (passes(static_cast<double>(mid) * grid_step))
      hi = mid;
    else
      lo = mid;
  }
  return static_cast<double>(hi) * grid_step;
}

double kolmogorov_distance(const Esd& f, const Esd& g) {
  double worst = 0.0;
  for (double a : f.eigenvalues()) worst = std::max(worst, std::fabs(f(a) - g(a)));
  for (double b : g.eigenvalues()) worst = std::max(worst, std::fabs(f(b) - g(b)));
  return worst;
}

double trace_bound(const SymMatrix& a, const SymMatrix& b) {
  if (a.order() != b.order()) throw Error(ErrorCode::DimensionMismatch, "matrices differ in order");
  if (a.order() == 0) throw Error(ErrorCode::InvalidArgument, "empty matrices");
  double acc = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    const double diff = av[i] - bv[i];
    acc += diff * diff;
  }
  return acc / static_cast<double>(a.order());
}

double trace_bound(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
  if (a.order() != b.order()) throw Error(ErrorCode::DimensionMismatch, "matrices differ in order");
  if (a.order() == 0) throw Error(ErrorCode::InvalidArgument, "empty matrices");
  std::uint64_t hamming = 0;
  for (std::size_t i = 0; i < a.order(); ++i) {
    const auto ra = a.row(i);
    const auto rb = b.row(i);
    for (std::size_t j = 0; j < ra.size(); ++j) hamming += static_cast<std::uint64_t>(ra[j] ^ rb[j]);
  }
  return static_cast<double>(hamming) / static_cast<double>(a.order());
}

}  // namespace rgg

#pragma once

#include "rgg/spectra.hpp"

namespace rgg {

struct LevyResult {
  double distance = 0.0;
  /// A point where the sandwich condition fails just below `distance`
  /// (diagnostic; equals the first atom when the distance is zero).
  double certificate_x = 0.0;
};

/// True iff F(x-eps) - eps <= G(x) <= F(x+eps) + eps for every real x.
bool levy_feasible(const Esd& f, const Esd& g, double eps, double* violation_x = nullptr);

/// Infimum of feasible eps, to within tol, by bisection on [0, spread + 1]
/// with an exact check at the jump points of both step functions.
LevyResult levy_distance(const Esd& f, const Esd& g, double tol = 1e-9);

/// Smallest eps on {step, 2 step, ...} that passes a dense x-scan of the
/// sandwich condition. Independent check of levy_distance.
double levy_distance_oracle(const Esd& f, const Esd& g, double grid_step);

/// sup_x |F(x) - G(x)|.
double kolmogorov_distance(const Esd& f, const Esd& g);

/// (1/n) sum_ij (A_ij - B_ij)^2.
double trace_bound(const SymMatrix& a, const SymMatrix& b);
double trace_bound(const AdjacencyMatrix& a, const AdjacencyMatrix& b);

}  // namespace rgg

#pragma once

#include <span>
#include <vector>

#include "kfunclab/allocation.hpp"
#include "kfunclab/k_profile.hpp"

namespace kfunclab {

struct ScalarCoordinate {
  double mu = 1.0;
  WeightedScalarCouple couple;
};

/// Weighted-scalar model of L1(mu; A0) + Linf(mu; A1): coordinate i has
/// measure mu_i and carries the couple (R, a_i|.|; R, b_i|.|).
struct ScalarInstance {
  std::vector<ScalarCoordinate> coords;
};

/// Throws std::invalid_argument on mu <= 0 or an invalid couple.
void validate(const ScalarInstance& inst);

/// Cost of the best decomposition whose A1 part has sup-norm level m:
///   sum_i mu_i a_i max(0, |x_i| - m / b_i) + t m.
double decomposition_cost(const ScalarInstance& inst, double t, double level);

struct DirectResult {
  double value = 0.0;
  double level = 0.0;  ///< minimizing sup-norm level m (smallest on ties)
};

/// K_t from its infimum definition,
///   inf { sum_i mu_i a_i |x0_i| + t max_i b_i |x1_i| : x_i = x0_i + x1_i },
/// minimized exactly over the breakpoints {0} U {b_i |x_i|} of the convex
/// piecewise-linear cost in m.
DirectResult direct_K_detailed(const ScalarInstance& inst, double t);

inline double direct_K(const ScalarInstance& inst, double t) {
  return direct_K_detailed(inst, t).value;
}

/// Maps each coordinate to a cell (mu_i, scalar_couple_profile(c_i)).
SimpleVectorFunction profiles(const ScalarInstance& inst);

struct DeviationReport {
  double max_abs = 0.0;
  double max_rel = 0.0;
};

/// Relative deviation |a - b| / max(|a|, |b|), 0 when both vanish.
double relative_deviation(double a, double b);

/// Compares direct_K against the allocation formula at every t.
DeviationReport theorem1_check(const ScalarInstance& inst, std::span<const double> ts);

}  // namespace kfunclab

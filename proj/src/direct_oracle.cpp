#include "kfunclab/direct_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kfunclab {

void validate(const ScalarInstance& inst) {
  for (const ScalarCoordinate& c : inst.coords) {
    if (!(std::isfinite(c.mu) && c.mu > 0.0)) {
      throw std::invalid_argument("scalar coordinate mu must be finite and > 0");
    }
    validate(c.couple);
  }
}

double decomposition_cost(const ScalarInstance& inst, double t, double level) {
  double cost = t * level;
  for (const ScalarCoordinate& c : inst.coords) {
    // Optimal x0 given |x1| <= m / b: shrink x toward the ball of radius m / b.
    const double excess = std::abs(c.couple.x) - level / c.couple.b;
    if (excess > 0.0) cost += c.mu * c.couple.a * excess;
  }
  return cost;
}

DirectResult direct_K_detailed(const ScalarInstance& inst, double t) {
  if (!(t >= 0.0)) throw std::domain_error("direct_K: t must be >= 0");
  validate(inst);
  std::vector<double> candidates{0.0};
  for (const ScalarCoordinate& c : inst.coords) {
    candidates.push_back(c.couple.b * std::abs(c.couple.x));
  }
  std::sort(candidates.begin(), candidates.end());
  DirectResult best{decomposition_cost(inst, t, candidates.front()), candidates.front()};
  for (double m : candidates) {
    const double cost = decomposition_cost(inst, t, m);
    if (cost < best.value) best = {cost, m};
  }
  return best;
}

SimpleVectorFunction profiles(const ScalarInstance& inst) {
  SimpleVectorFunction f;
  for (const ScalarCoordinate& c : inst.coords) f.add(c.mu, scalar_couple_profile(c.couple));
  return f;
}

double relative_deviation(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

DeviationReport theorem1_check(const ScalarInstance& inst, std::span<const double> ts) {
  const KProfile allocation = vector_K_profile(profiles(inst));
  DeviationReport report;
  for (double t : ts) {
    const double direct = direct_K(inst, t);
    const double formula = eval_K(allocation, t);
    report.max_abs = std::max(report.max_abs, std::abs(direct - formula));
    report.max_rel = std::max(report.max_rel, relative_deviation(direct, formula));
  }
  return report;
}

}  // namespace kfunclab

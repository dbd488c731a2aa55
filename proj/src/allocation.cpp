#include "kfunclab/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace kfunclab {

SimpleVectorFunction::SimpleVectorFunction(std::vector<Cell> cells) {
  cells_.reserve(cells.size());
  for (Cell& cell : cells) add(cell.mu, std::move(cell.profile));
}

void SimpleVectorFunction::add(double mu, KProfile profile) {
  if (!(std::isfinite(mu) && mu > 0.0)) {
    throw std::invalid_argument("cell measure mu must be finite and > 0");
  }
  cells_.push_back({mu, std::move(profile)});
}

SimpleVectorFunction SimpleVectorFunction::prefix(std::size_t n) const {
  const auto count = std::min(n, cells_.size());
  return SimpleVectorFunction(std::vector<Cell>(cells_.begin(), cells_.begin() + count));
}

KProfile vector_K_profile(const SimpleVectorFunction& f) {
  std::vector<WeightedStep> parts;
  parts.reserve(f.size());
  for (const Cell& cell : f.cells()) {
    if (!cell.profile.is_zero()) parts.push_back({cell.mu, cell.profile.derivative()});
  }
  return KProfile(merge_rearranged(parts));
}

double truncated_K(const SimpleVectorFunction& f, std::size_t n, double t) {
  if (n == 0) throw std::invalid_argument("truncated_K: n must be >= 1");
  return eval_K(vector_K_profile(f.prefix(n)), t);
}

double threshold_alloc_K(const SimpleVectorFunction& f, double t) {
  if (!(t >= 0.0)) throw std::domain_error("threshold_alloc_K: t must be >= 0");
  std::vector<double> thresholds;
  for (const Cell& cell : f.cells()) {
    const auto values = cell.profile.derivative().values();
    thresholds.insert(thresholds.end(), values.begin(), values.end());
  }
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  // Spent budget and collected value once every piece with slope >= the
  // current threshold is fully used.
  double spent = 0.0;
  double collected = 0.0;
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    const double next = j + 1 < thresholds.size() ? thresholds[j + 1] : 0.0;
    double budget = 0.0;
    double value = 0.0;
    for (const Cell& cell : f.cells()) {
      const StepFunction& k = cell.profile.derivative();
      const double used = distribution(k, next);
      budget += cell.mu * used;
      value += cell.mu * integrate(k, used);
    }
    if (t <= budget) return collected + thresholds[j] * (t - spent);
    spent = budget;
    collected = value;
  }
  return collected;
}

namespace {

double binomial_estimate(std::size_t top, std::size_t choose) {
  double result = 1.0;
  for (std::size_t i = 1; i <= choose; ++i) {
    result *= static_cast<double>(top - choose + i) / static_cast<double>(i);
  }
  return result;
}

// Exhaustive maximum of sum_i gain[i][j_i] with sum_i j_i <= budget, over
// cells [cell, end).
double enumerate_grid(const std::vector<std::vector<double>>& gain, std::size_t cell,
                      std::size_t budget, double partial) {
  if (cell == gain.size()) return partial;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j <= budget; ++j) {
    best = std::max(best, enumerate_grid(gain, cell + 1, budget - j, partial + gain[cell][j]));
  }
  return best;
}

double grid_oracle(const SimpleVectorFunction& f, double t, std::size_t steps, Execution exec) {
  const std::size_t n = f.size();
  if (binomial_estimate(steps + n, n) > kMaxOracleCandidates) {
    throw std::length_error("grid_alloc_oracle: grid too large to enumerate");
  }
  std::vector<std::vector<double>> gain(n, std::vector<double>(steps + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const Cell& cell = f.cells()[i];
    for (std::size_t j = 0; j <= steps; ++j) {
      const double budget_share = static_cast<double>(j) * t / static_cast<double>(steps);
      gain[i][j] = cell.mu * cell.profile(budget_share / cell.mu);
    }
  }
  std::vector<double> best(steps + 1);
  for_each_index(steps + 1, exec, [&](std::size_t j0) {
    best[j0] = enumerate_grid(gain, 1, steps - j0, gain[0][j0]);
  });
  return *std::max_element(best.begin(), best.end());
}

double aligned_oracle(const SimpleVectorFunction& f, double t, Execution exec) {
  const std::size_t n = f.size();
  // Budget shares u_i = mu_i t_i at which cell i sits on a breakpoint.
  std::vector<std::vector<double>> shares(n);
  double combos = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Cell& cell = f.cells()[i];
    shares[i].push_back(0.0);
    for (double s : cell.profile.derivative().breakpoints()) shares[i].push_back(cell.mu * s);
    combos *= static_cast<double>(shares[i].size());
  }
  if (combos * static_cast<double>(n + 1) > kMaxOracleCandidates) {
    throw std::length_error("grid_alloc_oracle: too many breakpoint combinations");
  }
  const auto total = static_cast<std::size_t>(combos);
  std::vector<double> best(total, 0.0);
  for_each_index(total, exec, [&](std::size_t combo) {
    std::vector<double> u(n);
    std::size_t rest = combo;
    double used = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = shares[i][rest % shares[i].size()];
      rest /= shares[i].size();
      used += u[i];
    }
    double local = 0.0;
    // free == n: every cell on a breakpoint.
    for (std::size_t free = 0; free <= n; ++free) {
      double spent = free < n ? used - u[free] : used;
      if (spent > t) continue;
      double value = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Cell& cell = f.cells()[i];
        double share = u[i];
        if (i == free) share = std::min(t - spent, cell.mu * cell.profile.derivative().support_end());
        value += cell.mu * cell.profile(share / cell.mu);
      }
      local = std::max(local, value);
    }
    best[combo] = local;
  });
  return *std::max_element(best.begin(), best.end());
}

}  // namespace

double grid_alloc_oracle(const SimpleVectorFunction& f, double t, std::size_t steps,
                         Execution exec) {
  if (!(t >= 0.0)) throw std::domain_error("grid_alloc_oracle: t must be >= 0");
  if (f.size() > kMaxOracleCells) {
    throw std::length_error("grid_alloc_oracle: too many cells for exhaustive enumeration");
  }
  if (f.empty() || t == 0.0) return 0.0;
  return steps == 0 ? aligned_oracle(f, t, exec) : grid_oracle(f, t, steps, exec);
}

std::vector<double> eval_K_batch(const KProfile& profile, std::span<const double> ts,
                                 Execution exec) {
  std::vector<double> out(ts.size());
  for_each_index(ts.size(), exec, [&](std::size_t i) { out[i] = eval_K(profile, ts[i]); });
  return out;
}

}  // namespace kfunclab

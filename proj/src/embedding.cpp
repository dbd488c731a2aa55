#include "kfunclab/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kfunclab/direct_oracle.hpp"
#include "kfunclab/lorentz.hpp"

namespace kfunclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double integral_of_power(const StepFunction& k, double p) {
  return integrate(power(k, p), kInf);
}

}  // namespace

PsiRearrangement psi_star(const SimpleVectorFunction& f) {
  ValueMassList product_levels;
  for (const Cell& cell : f.cells()) {
    const ValueMassList levels = to_levels(cell.profile.derivative(), cell.mu);
    product_levels.insert(product_levels.end(), levels.begin(), levels.end());
  }
  return {rearrange(std::move(product_levels))};
}

double eq10_check(const SimpleVectorFunction& f, std::span<const double> ts) {
  const StepFunction psi = psi_star(f).rearranged;
  const KProfile allocation = vector_K_profile(f);
  double worst = 0.0;
  for (double t : ts) {
    const double lhs = integrate(psi, t);
    worst = std::max(worst, std::abs(lhs - eval_K(allocation, t)));
    worst = std::max(worst, std::abs(lhs - threshold_alloc_K(f, t)));
  }
  return worst;
}

Eq11Result eq11_norm(const SimpleVectorFunction& f, double theta, double q) {
  Eq11Result out;
  out.lhs = interp_norm(vector_K_profile(f), theta, q);
  out.rhs = lorentz_pq_starstar(psi_star(f).profile(), 1.0 / (1.0 - theta), q);
  out.deviation = relative_deviation(out.lhs, out.rhs);
  return out;
}

double tp_norm_exact(const KProfile& profile, double p) {
  if (!(p > 1.0 && p < kInf)) throw std::domain_error("tp_norm_exact needs 1 < p < inf");
  return conjugate_exponent(p) * std::pow(integral_of_power(profile.derivative(), p), 1.0 / p);
}

std::vector<double> log_grid(double omega_min, double omega_max, double cells_per_decade) {
  if (!(omega_min > 0.0 && omega_max > omega_min && std::isfinite(omega_max))) {
    throw std::invalid_argument("log grid window must satisfy 0 < omega_min < omega_max < inf");
  }
  if (!(cells_per_decade > 0.0 && std::isfinite(cells_per_decade))) {
    throw std::invalid_argument("cells_per_decade must be finite and > 0");
  }
  constexpr double snap = 1e-9;
  const auto first =
      static_cast<long long>(std::ceil(std::log10(omega_min) * cells_per_decade - snap));
  const auto last =
      static_cast<long long>(std::floor(std::log10(omega_max) * cells_per_decade + snap));
  if (last - first < 1) {
    throw std::invalid_argument("log grid window holds no complete cell");
  }
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(last - first + 1));
  for (long long j = first; j <= last; ++j) {
    nodes.push_back(std::pow(10.0, static_cast<double>(j) / cells_per_decade));
  }
  return nodes;
}

SimpleVectorFunction tp_discretize(const KProfile& profile, double p, double omega_min,
                                   double omega_max, double cells_per_decade, CellScale scale,
                                   Execution exec) {
  if (!(p > 0.0 && p < kInf)) throw std::domain_error("tp_discretize needs 0 < p < inf");
  const std::vector<double> nodes = log_grid(omega_min, omega_max, cells_per_decade);
  std::vector<Cell> cells(nodes.size() - 1);
  for_each_index(cells.size(), exec, [&](std::size_t j) {
    const double left = nodes[j];
    const double right = nodes[j + 1];
    double factor = 0.0;
    switch (scale) {
      case CellScale::kGeometricMid:
        factor = std::pow(left * right, -0.5 / p);
        break;
      case CellScale::kRightEndpoint:
        factor = std::pow(right, -1.0 / p);
        break;
      case CellScale::kLeftEndpoint:
        factor = std::pow(left, -1.0 / p);
        break;
    }
    cells[j] = {right - left, scaled(profile, factor)};
  });
  return SimpleVectorFunction(std::move(cells));
}

double tp_norm_numeric(const KProfile& profile, double p, double omega_min, double omega_max,
                       double cells_per_decade, CellScale scale, Execution exec) {
  if (!(p > 1.0 && p < kInf)) throw std::domain_error("tp_norm_numeric needs 1 < p < inf");
  const SimpleVectorFunction f =
      tp_discretize(profile, p, omega_min, omega_max, cells_per_decade, scale, exec);
  return interp_norm(vector_K_profile(f), 1.0 - 1.0 / p, kInf);
}

IdentitySides eq13_distribution_check(std::span<const Level> levels, double p, double t) {
  if (!(p > 0.0 && std::isfinite(p))) throw std::domain_error("eq13 check needs 0 < p < inf");
  if (!(t > 0.0 && std::isfinite(t))) throw std::domain_error("eq13 check needs t > 0");
  validate_levels(levels);
  double measure = 0.0;
  double rhs = 0.0;
  for (const Level& level : levels) {
    if (level.value > 0.0) measure += level.mass * std::pow(level.value / t, p);
    rhs += level.mass * std::pow(level.value, p);
  }
  return {std::pow(t, p) * measure, rhs};
}

double strict_floor(double r) {
  if (!(r > 0.0)) return 0.0;
  return std::ceil(r) - 1.0;
}

double sp_section_count(double value, double p, double t) {
  const double value_power = std::pow(value, p);
  const double t_power = std::pow(t, p);
  auto inside = [&](double n) { return value_power > n * t_power; };
  if (!inside(1.0)) return 0.0;
  if (!(value_power / t_power < 0x1p52)) {
    throw std::overflow_error("sp_section_count: count exceeds the exact integer range");
  }
  // Terms n^{-1/p} v decrease in n: find the last member by doubling then
  // bisection.
  double low = 1.0;
  double high = 2.0;
  while (inside(high)) {
    low = high;
    high *= 2.0;
  }
  while (high - low > 1.0) {
    const double mid = std::floor(0.5 * (low + high));
    (inside(mid) ? low : high) = mid;
  }
  return low;
}

IdentitySides sp_distribution_check(std::span<const Level> levels, double p, double t) {
  if (!(p > 0.0 && std::isfinite(p))) throw std::domain_error("S_p check needs 0 < p < inf");
  if (!(t > 0.0 && std::isfinite(t))) throw std::domain_error("S_p check needs t > 0");
  validate_levels(levels);
  IdentitySides out;
  for (const Level& level : levels) {
    out.lhs += level.mass * sp_section_count(level.value, p, t);
    out.rhs += level.mass * strict_floor(std::pow(level.value, p) / std::pow(t, p));
  }
  return out;
}

double lp_norm(std::span<const Level> levels, double p) {
  double sum = 0.0;
  for (const Level& level : levels) sum += level.mass * std::pow(level.value, p);
  return std::pow(sum, 1.0 / p);
}

double sp_weak_norm(std::span<const Level> levels, double p, std::span<const double> ts) {
  double best = 0.0;
  for (double t : ts) {
    best = std::max(best, t * std::pow(sp_distribution_check(levels, p, t).lhs, 1.0 / p));
  }
  return best;
}

Remark7Sandwich remark7_sandwich(const SimpleVectorFunction& f, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0, 1)");
  const double p = 1.0 / (1.0 - theta);
  double sum = 0.0;
  for (const Cell& cell : f.cells()) {
    sum += cell.mu * integral_of_power(cell.profile.derivative(), p);
  }
  Remark7Sandwich out;
  out.lp = std::pow(sum, 1.0 / p);
  out.interp = interp_norm(vector_K_profile(f), theta, p);
  if (out.lp > 0.0) out.ratio = out.interp / out.lp;
  constexpr double slack = 1e-9;
  out.holds = out.ratio >= 1.0 - slack && out.ratio <= conjugate_exponent(p) * (1.0 + slack);
  return out;
}

}  // namespace kfunclab

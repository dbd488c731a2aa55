#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kfunclab/k_profile.hpp"
#include "kfunclab/parallel.hpp"

namespace kfunclab {

/// One cell of a simple vector-valued function: a set of measure `mu` on
/// which the function takes a value whose K-profile is `profile`.
struct Cell {
  double mu = 1.0;
  KProfile profile;
};

/// Finite list of cells; the zero function when empty. Every mu is > 0.
class SimpleVectorFunction {
 public:
  SimpleVectorFunction() = default;
  explicit SimpleVectorFunction(std::vector<Cell> cells);

  void add(double mu, KProfile profile);

  std::span<const Cell> cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  /// The first min(n, size()) cells.
  SimpleVectorFunction prefix(std::size_t n) const;

 private:
  std::vector<Cell> cells_;
};

/// K-profile of f in (L1(mu; A0), Linf(mu; A1)):
///
///   K(t) = sup { sum_i mu_i K_i(t_i) : t_i >= 0, sum_i mu_i t_i <= t }.
///
/// The supremum of a sum of concave piecewise-linear functions is their
/// sup-convolution; its derivative is the decreasing rearrangement of the
/// cells' derivatives with cell i's piece lengths stretched by mu_i.
KProfile vector_K_profile(const SimpleVectorFunction& f);

/// vector_K_profile of the first n cells, evaluated at t.
double truncated_K(const SimpleVectorFunction& f, std::size_t n, double t);

/// Water-filling evaluation of the same supremum: sweep a common marginal
/// threshold down through the distinct slope values and spend the budget on
/// every piece above it. Independent of the rearrangement merge.
double threshold_alloc_K(const SimpleVectorFunction& f, double t);

/// Brute-force lower bound for vector_K_profile(f)(t).
///
/// steps >= 1: maximizes sum_i mu_i K_i(t_i) over the grid
/// mu_i t_i = j_i t / steps with sum_i j_i <= steps, by exhaustive
/// enumeration.
///
/// steps == 0: breakpoint-aligned enumeration. Every cell but one sits at
/// one of its own breakpoints (or 0); the remaining cell receives the
/// leftover budget. An optimum of this form always exists, so the result
/// is exact.
///
/// Throws std::length_error when the enumeration would exceed
/// kMaxOracleCandidates points or the cell count exceeds kMaxOracleCells.
double grid_alloc_oracle(const SimpleVectorFunction& f, double t, std::size_t steps,
                         Execution exec = Execution::kSerial);

inline constexpr std::size_t kMaxOracleCells = 8;
inline constexpr double kMaxOracleCandidates = 2e8;

/// K(t_j) for every t_j, evaluated with the given execution policy.
std::vector<double> eval_K_batch(const KProfile& profile, std::span<const double> ts,
                                 Execution exec = Execution::kSerial);

}  // namespace kfunclab

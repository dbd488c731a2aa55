#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kfunclab {

/// One level of a simple function: `mass` units of measure at height `value`.
struct Level {
  double value = 0.0;
  double mass = 0.0;

  bool operator==(const Level&) const = default;
};

/// Unordered level decomposition of a simple function.
using ValueMassList = std::vector<Level>;

/// Throws std::invalid_argument unless every mass is finite and > 0 and
/// every value is finite and >= 0.
void validate_levels(std::span<const Level> levels);

/// A nonnegative, finitely piecewise-constant function on (0, inf).
///
/// Piece j covers (s_{j-1}, s_j] with s_0 = 0 and carries value v_j; the
/// function equals `tail` on (s_n, inf). Pieces are right-closed, so the
/// function is left-continuous at breakpoints in this storage; as a density
/// it is identified with its right-continuous version (they agree a.e.).
///
/// Objects are always canonical: zero-length pieces are dropped, adjacent
/// equal values are merged, and trailing pieces equal to the tail are folded
/// into it. Two StepFunctions describing the same function compare equal.
class StepFunction {
 public:
  StepFunction() = default;

  /// Throws std::invalid_argument on mismatched sizes, non-finite or
  /// nonpositive breakpoints, decreasing breakpoints, or negative values.
  StepFunction(std::vector<double> breakpoints, std::vector<double> values,
               double tail = 0.0);

  /// `value` on (0, length], zero afterwards.
  static StepFunction indicator(double length, double value = 1.0);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }
  double tail() const { return tail_; }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// Last breakpoint, or 0 for a function with no pieces.
  double support_end() const;

  /// True when v_1 >= v_2 >= ... >= v_n >= tail.
  bool is_monotone() const;

  bool has_finite_support() const { return tail_ == 0.0; }

  bool operator==(const StepFunction&) const = default;

 private:
  void canonicalize();

  std::vector<double> breakpoints_;
  std::vector<double> values_;
  double tail_ = 0.0;
};

/// Value at s > 0; throws std::domain_error for s <= 0.
double evaluate(const StepFunction& f, double s);

/// Integral of f over (0, t]. `t` may be +inf; the result is +inf when the
/// tail is positive and t is unbounded.
double integrate(const StepFunction& f, double t);

/// Lebesgue measure of {s > 0 : f(s) > level}; +inf iff tail > level.
double distribution(const StepFunction& f, double level);

/// Nonincreasing rearrangement of a simple function given by its levels.
/// The result is monotone with tail 0.
StepFunction rearrange(ValueMassList levels);

/// One input of merge_rearranged: a monotone, finitely supported step
/// function whose interval lengths count `weight` times.
struct WeightedStep {
  double weight = 1.0;
  StepFunction f;
};

/// Decreasing rearrangement of the weighted disjoint union of monotone step
/// functions, computed by a k-way merge over the parts' pieces.
///
/// Throws std::invalid_argument if a part is not monotone, has a nonzero
/// tail, or has a nonpositive weight.
StepFunction merge_rearranged(std::span<const WeightedStep> parts);

/// Pointwise f^p for p > 0.
StepFunction power(const StepFunction& f, double p);

/// Pointwise lambda * f for lambda >= 0.
StepFunction scale_values(const StepFunction& f, double lambda);

/// Level decomposition of a finitely supported f with masses multiplied by
/// `weight`. Zero-valued pieces are omitted.
ValueMassList to_levels(const StepFunction& f, double weight = 1.0);

}  // namespace kfunclab

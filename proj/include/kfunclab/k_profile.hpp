#pragma once

#include <limits>
#include <span>
#include <vector>

#include "kfunclab/step_function.hpp"

namespace kfunclab {

/// Concave, nondecreasing, piecewise-linear t -> K(t) with K(0) = 0, stored
/// through its derivative k: a nonincreasing step function with tail 0, so
/// K(t) = integral of k over (0, t] and K(inf) = ||k||_1 is finite.
class KProfile {
 public:
  /// The zero profile.
  KProfile() = default;

  /// Throws std::invalid_argument if `k` is not nonincreasing or has a
  /// nonzero tail.
  explicit KProfile(StepFunction k);

  const StepFunction& derivative() const { return k_; }

  /// K(t) for t >= 0 (t may be +inf).
  double operator()(double t) const { return integrate(k_, t); }

  /// K(inf), the saturation level.
  double total() const { return integrate(k_, std::numeric_limits<double>::infinity()); }

  /// k(0+), the slope of the first linear piece.
  double initial_slope() const { return k_.empty() ? 0.0 : k_.values()[0]; }

  bool is_zero() const { return k_.empty(); }

  bool operator==(const KProfile&) const = default;

 private:
  StepFunction k_;
};

/// The one-dimensional couple (R, a|.|; R, b|.|) holding the element x.
struct WeightedScalarCouple {
  double a = 1.0;
  double b = 1.0;
  double x = 0.0;
};

/// Throws std::invalid_argument unless a > 0, b > 0 and all fields are finite.
void validate(const WeightedScalarCouple& c);

/// K(t) = |x| min(a, t b): k = b|x| on (0, a/b].
KProfile scalar_couple_profile(const WeightedScalarCouple& c);

/// K-profile of a simple function for the couple (L1, Linf): k is its
/// decreasing rearrangement.
KProfile l1_linf_profile(ValueMassList levels);

/// K(t); throws std::domain_error for t < 0.
double eval_K(const KProfile& profile, double t);

/// x**(t) = K(t) / t; throws std::domain_error for t <= 0.
double x_star_star(const KProfile& profile, double t);

/// Profile of lambda * x: k scaled pointwise by |lambda|.
KProfile scaled(const KProfile& profile, double lambda);

}  // namespace kfunclab

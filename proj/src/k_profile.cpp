#include "kfunclab/k_profile.hpp"

#include <cmath>
#include <stdexcept>

namespace kfunclab {

KProfile::KProfile(StepFunction k) : k_(std::move(k)) {
  if (!k_.has_finite_support()) {
    throw std::invalid_argument("KProfile: derivative must have tail 0");
  }
  if (!k_.is_monotone()) {
    throw std::invalid_argument("KProfile: derivative must be nonincreasing");
  }
}

void validate(const WeightedScalarCouple& c) {
  if (!(std::isfinite(c.a) && c.a > 0.0) || !(std::isfinite(c.b) && c.b > 0.0)) {
    throw std::invalid_argument("scalar couple weights a, b must be finite and > 0");
  }
  if (!std::isfinite(c.x)) throw std::invalid_argument("scalar couple element must be finite");
}

KProfile scalar_couple_profile(const WeightedScalarCouple& c) {
  validate(c);
  if (c.x == 0.0) return KProfile();
  return KProfile(StepFunction::indicator(c.a / c.b, c.b * std::abs(c.x)));
}

KProfile l1_linf_profile(ValueMassList levels) {
  return KProfile(rearrange(std::move(levels)));
}

double eval_K(const KProfile& profile, double t) {
  if (!(t >= 0.0)) throw std::domain_error("eval_K: t must be >= 0");
  return profile(t);
}

double x_star_star(const KProfile& profile, double t) {
  if (!(t > 0.0)) throw std::domain_error("x_star_star: t must be > 0");
  return profile(t) / t;
}

KProfile scaled(const KProfile& profile, double lambda) {
  return KProfile(scale_values(profile.derivative(), std::abs(lambda)));
}

}  // namespace kfunclab

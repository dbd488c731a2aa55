#include "kfunclab/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kfunclab/errors.hpp"

namespace kfunclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_q(double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("Lorentz exponent q must lie in [1, inf]");
}

// sup_t t^alpha K(t) over (0, inf) for alpha in [-1, 0].
//
// On a piece K = c + m t with c, m >= 0 the derivative of t^alpha (c + m t)
// is t^{alpha-1} (alpha c + (alpha + 1) m t): negative, then positive. The
// only stationary point is a minimum, so the sup over each piece is at an
// endpoint. The first piece (c = 0) is nondecreasing and the tail (m = 0)
// nonincreasing, so the right endpoints s_j cover every candidate.
double starstar_sup(const KProfile& profile, double alpha) {
  const StepFunction& k = profile.derivative();
  const auto breaks = k.breakpoints();
  const auto values = k.values();
  double best = 0.0;
  double K_right = 0.0;
  double left = 0.0;
  for (std::size_t j = 0; j < breaks.size(); ++j) {
    K_right += values[j] * (breaks[j] - left);
    best = std::max(best, std::pow(breaks[j], alpha) * K_right);
    left = breaks[j];
  }
  return best;
}

}  // namespace

double conjugate_exponent(double p) {
  if (!(p > 1.0)) throw std::domain_error("conjugate exponent needs p > 1");
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

double lorentz_pq(const StepFunction& fstar, double p, double q) {
  if (!(p > 0.0)) throw std::invalid_argument("Lorentz exponent p must lie in (0, inf]");
  check_q(q);
  if (!fstar.is_monotone()) {
    throw std::invalid_argument("lorentz_pq: input must be a nonincreasing rearrangement");
  }
  if (!fstar.has_finite_support()) {
    throw DivergentNorm("lorentz_pq: nonzero tail gives an infinite norm");
  }
  if (fstar.empty()) return 0.0;

  const auto breaks = fstar.breakpoints();
  const auto values = fstar.values();
  if (q == kInf) {
    if (p == kInf) return values[0];
    // t^{1/p} v_j increases on each piece: the sup sits at right endpoints.
    double best = 0.0;
    for (std::size_t j = 0; j < breaks.size(); ++j) {
      best = std::max(best, std::pow(breaks[j], 1.0 / p) * values[j]);
    }
    return best;
  }
  if (p == kInf) throw DivergentNorm("lorentz_pq: p = inf requires q = inf");

  const double exponent = q / p;
  double sum = 0.0;
  double left_power = 0.0;
  for (std::size_t j = 0; j < breaks.size(); ++j) {
    const double right_power = std::pow(breaks[j], exponent);
    sum += std::pow(values[j], q) * (right_power - left_power) / exponent;
    left_power = right_power;
  }
  return std::pow(sum, 1.0 / q);
}

QuadratureResult lorentz_pq_starstar_detailed(const KProfile& profile, double p, double q,
                                              double rel_tol) {
  if (!(p > 0.0)) throw std::invalid_argument("Lorentz exponent p must lie in (0, inf]");
  check_q(q);
  if (profile.is_zero()) return {};
  const double inv_p = p == kInf ? 0.0 : 1.0 / p;
  const double alpha = inv_p - 1.0;

  if (q == kInf) {
    if (alpha > 0.0) throw DivergentNorm("(p,inf) norm of x** diverges for p < 1");
    return {starstar_sup(profile, alpha), 0.0};
  }
  if (!(p > 1.0)) throw DivergentNorm("(p,q) norm of x** diverges for p <= 1 and finite q");
  if (p == kInf) throw DivergentNorm("(p,q) norm of x** diverges for p = inf and finite q");

  const StepFunction& k = profile.derivative();
  const auto breaks = k.breakpoints();
  const auto values = k.values();

  // First piece: [t^{1/p} v_1]^q dt/t integrates to v_1^q (p/q) s_1^{q/p}.
  double sum = std::pow(values[0], q) * std::pow(breaks[0], q * inv_p) / (q * inv_p);
  double error = 0.0;
  double K_left = values[0] * breaks[0];
  for (std::size_t j = 1; j < breaks.size(); ++j) {
    const double left = breaks[j - 1];
    const double right = breaks[j];
    const double m = values[j];
    const double c = K_left - m * left;
    auto integrand = [=](double u) {
      const double t = std::exp(u);
      return std::pow(std::pow(t, alpha) * (c + m * t), q);
    };
    const QuadratureResult piece =
        adaptive_gauss_legendre(integrand, std::log(left), std::log(right), rel_tol);
    sum += piece.value;
    error += piece.error;
    K_left += m * (right - left);
  }
  // Tail: K = K(inf) on (s_n, inf), so the integrand is K^q t^{q/p - q - 1}.
  const double tail_exponent = q * inv_p - q;
  sum += std::pow(K_left, q) * std::pow(breaks.back(), tail_exponent) / (-tail_exponent);

  const double value = std::pow(sum, 1.0 / q);
  return {value, value / (q * sum) * error};
}

QuadratureResult interp_norm_detailed(const KProfile& profile, double theta, double q,
                                      double rel_tol) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("interpolation parameter theta must lie in (0, 1)");
  }
  return lorentz_pq_starstar_detailed(profile, 1.0 / (1.0 - theta), q, rel_tol);
}

HardySandwich hardy_sandwich(const KProfile& profile, double p, double q) {
  if (!(p > 1.0 && p < kInf)) throw std::invalid_argument("hardy_sandwich needs 1 < p < inf");
  HardySandwich out;
  out.lower = lorentz_pq(profile.derivative(), p, q);
  out.upper = lorentz_pq_starstar(profile, p, q);
  if (out.lower > 0.0) out.ratio = out.upper / out.lower;
  constexpr double slack = 1e-9;
  out.holds = out.lower <= out.upper * (1.0 + slack) &&
              out.upper <= conjugate_exponent(p) * out.lower * (1.0 + slack);
  return out;
}

}  // namespace kfunclab

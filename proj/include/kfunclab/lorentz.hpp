#pragma once

#include <optional>

#include "kfunclab/k_profile.hpp"
#include "kfunclab/quadrature.hpp"
#include "kfunclab/step_function.hpp"

namespace kfunclab {

/// p' = p / (p - 1) for p in (1, inf); 1 for p = inf. Throws
/// std::domain_error for p <= 1.
double conjugate_exponent(double p);

/// ||x||_{p,q} = (int_0^inf [t^{1/p} x*(t)]^q dt/t)^{1/q} for a decreasing
/// rearrangement given as a monotone step function; q = inf gives the
/// supremum. Exact per-piece closed forms, no quadrature.
///
/// p in (0, inf], q in [1, inf]. Throws DivergentNorm for a nonzero tail and
/// for p = inf with finite q; std::invalid_argument for a non-monotone input
/// or out-of-range exponents.
double lorentz_pq(const StepFunction& fstar, double p, double q);

/// ||x||_{(p,q)}: the same integral with x** = K(t)/t in place of x*.
///
/// The first linear piece of K (where K = k(0+) t) and the constant tail are
/// integrated in closed form; interior pieces use adaptive 32-point
/// Gauss-Legendre in u = ln t. q = inf is exact: t^{1/p-1}(c + m t) has no
/// interior maximum on a piece, so the sup is taken over breakpoints.
///
/// Throws DivergentNorm when p <= 1 with finite q, or p < 1 with q = inf.
QuadratureResult lorentz_pq_starstar_detailed(const KProfile& profile, double p, double q,
                                              double rel_tol = 1e-10);

inline double lorentz_pq_starstar(const KProfile& profile, double p, double q) {
  return lorentz_pq_starstar_detailed(profile, p, q).value;
}

/// Real-interpolation norm (int (t^{-theta} K(t))^q dt/t)^{1/q}, 0 < theta < 1.
/// Evaluated as lorentz_pq_starstar with p = 1 / (1 - theta).
QuadratureResult interp_norm_detailed(const KProfile& profile, double theta, double q,
                                      double rel_tol = 1e-10);

inline double interp_norm(const KProfile& profile, double theta, double q) {
  return interp_norm_detailed(profile, theta, q).value;
}

struct HardySandwich {
  double lower = 0.0;            ///< ||k||_{p,q}, k read as x*
  double upper = 0.0;            ///< ||.||_{(p,q)} of the profile
  std::optional<double> ratio;   ///< upper / lower when lower > 0
  bool holds = true;             ///< lower <= upper <= p' lower (1e-9 slack)
};

/// lower <= upper <= p' lower, from x* <= x** and Hardy's inequality.
/// p in (1, inf), q in [1, inf].
HardySandwich hardy_sandwich(const KProfile& profile, double p, double q);

}  // namespace kfunclab

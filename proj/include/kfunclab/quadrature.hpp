#pragma once

#include <array>
#include <functional>

namespace kfunclab {

inline constexpr int kGaussOrder = 32;

/// Nodes and weights of the Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::array<double, kGaussOrder> nodes{};
  std::array<double, kGaussOrder> weights{};
};

/// The 32-point rule, computed once by Newton iteration on P_32.
const GaussLegendreRule& gauss_legendre_32();

/// Single application of the 32-point rule on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  ///< sum of |coarse - refined| over accepted leaves
};

/// Adaptive dyadic refinement of the 32-point rule: an interval is accepted
/// once its value and the sum of its two halves agree to `rel_tol` (relative
/// to the halves) or to `abs_tol`. Subdivision stops at `max_depth`.
QuadratureResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a,
                                         double b, double rel_tol = 1e-10,
                                         double abs_tol = 0.0, int max_depth = 40);

}  // namespace kfunclab

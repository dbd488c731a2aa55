#pragma once

#include <span>

#include "kfunclab/allocation.hpp"
#include "kfunclab/k_profile.hpp"
#include "kfunclab/parallel.hpp"
#include "kfunclab/step_function.hpp"

namespace kfunclab {

/// Decreasing rearrangement of Psi_f(s, w) = k(f(w), s) over the product
/// measure dmu ds.
struct PsiRearrangement {
  StepFunction rearranged;

  KProfile profile() const { return KProfile(rearranged); }
};

/// Rearranges the product-space level list {(k_i value, mu_i * length)} of
/// all cells at once.
PsiRearrangement psi_star(const SimpleVectorFunction& f);

/// Max over ts of the deviation between int_0^t psi_star(f) and the
/// allocation K_t of f, where the allocation side is evaluated both through
/// vector_K_profile and through threshold water-filling.
double eq10_check(const SimpleVectorFunction& f, std::span<const double> ts);

struct Eq11Result {
  double lhs = 0.0;        ///< interpolation (theta, q) norm of f
  double rhs = 0.0;        ///< (p, q) norm of Psi_f, 1/p = 1 - theta
  double deviation = 0.0;  ///< relative
};

Eq11Result eq11_norm(const SimpleVectorFunction& f, double theta, double q);

/// p' (int_0^inf k^p ds)^{1/p}: the (1 - 1/p, inf) norm of w -> w^{-1/p} x.
double tp_norm_exact(const KProfile& profile, double p);

/// Which point of a log cell [w_j, w_{j+1}] sets the scale w^{-1/p}.
enum class CellScale {
  kGeometricMid,   ///< (w_j w_{j+1})^{-1/(2p)}: closest, no one-sided guarantee
  kRightEndpoint,  ///< w_{j+1}^{-1/p}: pointwise below, a guaranteed lower bound
  kLeftEndpoint,   ///< w_j^{-1/p}: pointwise above on the window
};

/// Log grid with nodes 10^{j / cells_per_decade} for integer j, restricted
/// to [omega_min, omega_max]. Grids nest exactly under window widening and
/// under multiplying cells_per_decade by an integer.
std::vector<double> log_grid(double omega_min, double omega_max, double cells_per_decade);

/// Discretizes f(w) = w^{-1/p} x as cells (w_{j+1} - w_j, scale_j * profile).
/// Throws std::invalid_argument for a window holding no complete cell.
SimpleVectorFunction tp_discretize(const KProfile& profile, double p, double omega_min,
                                   double omega_max, double cells_per_decade,
                                   CellScale scale = CellScale::kGeometricMid,
                                   Execution exec = Execution::kSerial);

/// interp_norm(vector_K_profile(tp_discretize(...)), 1 - 1/p, inf).
double tp_norm_numeric(const KProfile& profile, double p, double omega_min, double omega_max,
                       double cells_per_decade, CellScale scale = CellScale::kGeometricMid,
                       Execution exec = Execution::kSerial);

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// t^p m({|T_p f| > t}) against int |f|^p, with the w-section of each level
/// measured as {w > 0 : w^{-1/p} v > t} = (0, (v/t)^p).
IdentitySides eq13_distribution_check(std::span<const Level> levels, double p, double t);

/// Largest integer n with n < r, for r > 0 (so [4] = 3 and [0.5] = 0).
double strict_floor(double r);

/// #{n >= 1 : n^{-1/p} v > t}, counted by search on the membership test
/// v^p > n t^p. Throws std::overflow_error past 2^52 members.
double sp_section_count(double value, double p, double t);

/// m'({|S_p f| > t}) by counting, against int [|f|^p / t^p] dmu.
IdentitySides sp_distribution_check(std::span<const Level> levels, double p, double t);

/// (sum mass |value|^p)^{1/p}.
double lp_norm(std::span<const Level> levels, double p);

/// max over ts of t m'({|S_p f| > t})^{1/p}; never exceeds lp_norm.
double sp_weak_norm(std::span<const Level> levels, double p, std::span<const double> ts);

struct Remark7Sandwich {
  double lp = 0.0;      ///< (sum_i mu_i int k_i^p)^{1/p}
  double interp = 0.0;  ///< interpolation (theta, p) norm of f
  double ratio = 1.0;   ///< interp / lp (1 when both vanish)
  bool holds = true;    ///< 1 <= ratio <= p' (1e-9 slack)
};

/// p = q = 1 / (1 - theta).
Remark7Sandwich remark7_sandwich(const SimpleVectorFunction& f, double theta);

}  // namespace kfunclab

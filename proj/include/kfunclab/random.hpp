#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "kfunclab/allocation.hpp"
#include "kfunclab/direct_oracle.hpp"
#include "kfunclab/k_profile.hpp"
#include "kfunclab/step_function.hpp"

namespace kfunclab {

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic per-case random stream: std::mt19937_64 seeded with
/// splitmix64(seed ^ splitmix64(case_index)). Doubles use the top 53 bits,
/// so streams are identical on every conforming standard library.
class CaseRng {
 public:
  CaseRng(std::uint64_t seed, std::uint64_t case_index);

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// 2^u with u uniform on [lo_exp, hi_exp).
  double log_uniform2(double lo_exp, double hi_exp);
  /// Uniform integer on [lo, hi].
  std::size_t index(std::size_t lo, std::size_t hi);

 private:
  std::mt19937_64 engine_;
};

/// n in [1, max_coords]; mu, a, b log-uniform in [2^-4, 2^4]; x in [-4, 4].
ScalarInstance random_scalar_instance(CaseRng& rng, std::size_t max_coords = 8);

/// 1..max_pieces pieces; breakpoints log-uniform in [2^lo_exp, 2^hi_exp],
/// values strictly decreasing, log-uniform in [2^-2, 2^2].
KProfile random_profile(CaseRng& rng, std::size_t max_pieces = 4, double lo_exp = -3.0,
                        double hi_exp = 2.0);

/// 1..max_cells cells with mu log-uniform in [2^-3, 2^3].
SimpleVectorFunction random_vector_function(CaseRng& rng, std::size_t max_cells = 8,
                                            std::size_t max_pieces = 4);

/// 1..max_levels levels with dyadic values j/4 (j in 0..16) and masses
/// log-uniform in [2^-3, 2^3].
ValueMassList random_levels(CaseRng& rng, std::size_t max_levels = 6);

}  // namespace kfunclab

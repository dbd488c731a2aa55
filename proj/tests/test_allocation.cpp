#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kfunclab/allocation.hpp"
#include "kfunclab/direct_oracle.hpp"
#include "kfunclab/random.hpp"

using namespace kfunclab;

namespace {

SimpleVectorFunction example_one() {
  SimpleVectorFunction f;
  f.add(1.0, scalar_couple_profile({1.0, 1.0, 1.0}));
  f.add(1.0, scalar_couple_profile({1.0, 2.0, 1.0}));
  return f;
}

double full_K(const SimpleVectorFunction& f, double t) {
  return eval_K(vector_K_profile(f), t);
}

// Two-cell allocation solved by scanning u = mu_0 t_0 over every point where
// either cell crosses one of its own breakpoints. The objective is concave
// piecewise linear in u, so its maximum sits at one of these points.
double two_cell_scan(const SimpleVectorFunction& f, double t) {
  const Cell& c0 = f.cells()[0];
  const Cell& c1 = f.cells()[1];
  std::vector<double> us{0.0, t};
  for (double s : c0.profile.derivative().breakpoints()) us.push_back(c0.mu * s);
  for (double s : c1.profile.derivative().breakpoints()) us.push_back(t - c1.mu * s);
  double best = 0.0;
  for (double u : us) {
    if (u < 0.0 || u > t) continue;
    const double value = c0.mu * c0.profile(u / c0.mu) + c1.mu * c1.profile((t - u) / c1.mu);
    best = std::max(best, value);
  }
  return best;
}

}  // namespace

TEST(VectorKProfile, Examples) {
  EXPECT_DOUBLE_EQ(full_K(example_one(), 1.0), 1.5);

  SimpleVectorFunction weighted;
  weighted.add(2.0, scalar_couple_profile({1.0, 1.0, 1.0}));
  weighted.add(1.0, scalar_couple_profile({1.0, 1.0, 1.0}));
  EXPECT_EQ(vector_K_profile(weighted).derivative(), StepFunction::indicator(3.0));
  EXPECT_DOUBLE_EQ(full_K(weighted, 2.0), 2.0);

  CaseRng rng(41, 0);
  const KProfile single = random_profile(rng);
  SimpleVectorFunction one;
  one.add(1.0, single);
  for (double t : {0.1, 0.5, 1.0, 3.0, 100.0}) EXPECT_EQ(full_K(one, t), eval_K(single, t));

  EXPECT_TRUE(vector_K_profile(SimpleVectorFunction()).is_zero());
}

TEST(VectorKProfile, MatchesTwoCellScan) {
  for (std::uint64_t c = 0; c < 300; ++c) {
    CaseRng rng(43, c);
    SimpleVectorFunction f;
    f.add(rng.log_uniform2(-3, 3), random_profile(rng));
    f.add(rng.log_uniform2(-3, 3), random_profile(rng));
    for (double t : {0.01, 0.2, 1.0, 2.5, 9.0, 80.0}) {
      const double expected = two_cell_scan(f, t);
      EXPECT_NEAR(full_K(f, t), expected, 1e-12 * std::max(1.0, expected)) << "case " << c;
    }
  }
}

TEST(VectorKProfile, MatchesDirectDecomposition) {
  for (std::uint64_t c = 0; c < 200; ++c) {
    CaseRng rng(47, c);
    const ScalarInstance inst = random_scalar_instance(rng);
    const KProfile profile = vector_K_profile(profiles(inst));
    for (double t : {0.02, 0.3, 1.0, 4.0, 50.0}) {
      const double direct = direct_K(inst, t);
      EXPECT_NEAR(eval_K(profile, t), direct, 1e-12 * std::max(1.0, direct));
    }
  }
}

TEST(VectorKProfile, MatchesThresholdAllocation) {
  for (std::uint64_t c = 0; c < 300; ++c) {
    CaseRng rng(53, c);
    const SimpleVectorFunction f = random_vector_function(rng);
    for (double t : {0.0, 0.05, 0.7, 3.0, 20.0, 1e4}) {
      const double expected = threshold_alloc_K(f, t);
      EXPECT_NEAR(full_K(f, t), expected, 1e-12 * std::max(1.0, expected));
    }
  }
}

TEST(VectorKProfile, PermutationAndSplittingInvariance) {
  for (std::uint64_t c = 0; c < 100; ++c) {
    CaseRng rng(59, c);
    const SimpleVectorFunction f = random_vector_function(rng);
    SimpleVectorFunction reversed;
    SimpleVectorFunction split;
    for (auto it = f.cells().rbegin(); it != f.cells().rend(); ++it) {
      reversed.add(it->mu, it->profile);
    }
    for (const Cell& cell : f.cells()) {
      split.add(cell.mu / 2.0, cell.profile);
      split.add(cell.mu / 2.0, cell.profile);
    }
    for (double t : {0.1, 1.0, 5.0, 40.0}) {
      const double base = full_K(f, t);
      EXPECT_NEAR(full_K(reversed, t), base, 1e-12 * std::max(1.0, base));
      EXPECT_NEAR(full_K(split, t), base, 1e-12 * std::max(1.0, base));
    }
  }
}

TEST(VectorKProfile, SuperadditivityBounds) {
  for (std::uint64_t c = 0; c < 200; ++c) {
    CaseRng rng(61, c);
    const SimpleVectorFunction f = random_vector_function(rng);
    double saturation = 0.0;
    double max_slope = 0.0;
    for (const Cell& cell : f.cells()) {
      saturation += cell.mu * cell.profile.total();
      max_slope = std::max(max_slope, cell.profile.initial_slope());
    }
    for (double t : {0.01, 0.3, 2.0, 30.0}) {
      const double value = full_K(f, t);
      for (const Cell& cell : f.cells()) {
        EXPECT_LE(cell.mu * cell.profile(t / cell.mu), value * (1.0 + 1e-12));
      }
      EXPECT_LE(value, saturation * (1.0 + 1e-12));
      EXPECT_LE(value, max_slope * t * (1.0 + 1e-12));
    }
  }
}

TEST(VectorKProfile, L1LinfUnionConsistency) {
  for (std::uint64_t c = 0; c < 200; ++c) {
    CaseRng rng(67, c);
    SimpleVectorFunction f;
    ValueMassList all;
    const std::size_t n = rng.index(1, 5);
    for (std::size_t i = 0; i < n; ++i) {
      const ValueMassList levels = random_levels(rng);
      f.add(1.0, l1_linf_profile(levels));
      all.insert(all.end(), levels.begin(), levels.end());
    }
    const KProfile merged = vector_K_profile(f);
    const KProfile direct = l1_linf_profile(all);
    EXPECT_TRUE(std::ranges::equal(merged.derivative().values(), direct.derivative().values()));
    for (double t : {0.1, 1.0, 4.0, 30.0, 400.0}) {
      EXPECT_NEAR(eval_K(merged, t), eval_K(direct, t), 1e-12 * std::max(1.0, eval_K(direct, t)));
    }
  }
}

TEST(TruncatedK, Examples) {
  const SimpleVectorFunction f = example_one();
  EXPECT_DOUBLE_EQ(truncated_K(f, 1, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(truncated_K(f, 2, 1.0), 1.5);
  EXPECT_DOUBLE_EQ(truncated_K(f, 99, 1.0), 1.5);
  EXPECT_THROW(truncated_K(f, 0, 1.0), std::invalid_argument);
}

TEST(TruncatedK, MonotoneConvergence) {
  for (std::uint64_t c = 0; c < 200; ++c) {
    CaseRng rng(71, c);
    const SimpleVectorFunction f = random_vector_function(rng);
    for (double t : {0.05, 1.0, 12.0}) {
      double previous = 0.0;
      for (std::size_t n = 1; n <= f.size(); ++n) {
        const double value = truncated_K(f, n, t);
        EXPECT_GE(value, previous);
        previous = value;
      }
      EXPECT_EQ(previous, full_K(f, t));
    }
  }
}

TEST(GridAllocOracle, Examples) {
  EXPECT_DOUBLE_EQ(grid_alloc_oracle(example_one(), 1.0, 2), 1.5);
  EXPECT_DOUBLE_EQ(grid_alloc_oracle(example_one(), 1.0, 0), 1.5);
  EXPECT_EQ(grid_alloc_oracle(example_one(), 0.0, 5), 0.0);

  CaseRng rng(73, 0);
  SimpleVectorFunction one;
  one.add(1.0, random_profile(rng));
  for (std::size_t steps : {1u, 3u, 10u}) {
    EXPECT_DOUBLE_EQ(grid_alloc_oracle(one, 2.0, steps), eval_K(one.cells()[0].profile, 2.0));
  }
}

TEST(GridAllocOracle, LowerBoundAndAlignedEquality) {
  for (std::uint64_t c = 0; c < 150; ++c) {
    CaseRng rng(79, c);
    const SimpleVectorFunction f = random_vector_function(rng, 4, 3);
    for (double t : {0.1, 1.0, 6.0}) {
      const double exact = full_K(f, t);
      for (std::size_t steps : {1u, 4u, 17u}) {
        EXPECT_LE(grid_alloc_oracle(f, t, steps), exact + 1e-9);
      }
      EXPECT_NEAR(grid_alloc_oracle(f, t, 0), exact, 1e-9 * std::max(1.0, exact));
    }
  }
}

TEST(GridAllocOracle, ConvergesUnderRefinement) {
  CaseRng rng(83, 0);
  const SimpleVectorFunction f = random_vector_function(rng, 3, 3);
  const double exact = full_K(f, 1.7);
  const double coarse = exact - grid_alloc_oracle(f, 1.7, 8);
  const double fine = exact - grid_alloc_oracle(f, 1.7, 256);
  EXPECT_GE(coarse, -1e-12);
  EXPECT_LE(fine, coarse + 1e-12);
  EXPECT_LT(fine, 1e-2 * exact);
}

TEST(GridAllocOracle, SerialMatchesParallel) {
  for (std::uint64_t c = 0; c < 20; ++c) {
    CaseRng rng(89, c);
    const SimpleVectorFunction f = random_vector_function(rng, 4, 3);
    for (std::size_t steps : {0u, 30u}) {
      EXPECT_EQ(grid_alloc_oracle(f, 2.0, steps, Execution::kSerial),
                grid_alloc_oracle(f, 2.0, steps, Execution::kParallel));
    }
  }
}

TEST(GridAllocOracle, RefusesBlowUp) {
  SimpleVectorFunction big;
  for (std::size_t i = 0; i <= kMaxOracleCells; ++i) {
    big.add(1.0, scalar_couple_profile({1.0, 1.0, 1.0}));
  }
  EXPECT_THROW(grid_alloc_oracle(big, 1.0, 2), std::length_error);

  SimpleVectorFunction wide;
  for (int i = 0; i < 6; ++i) wide.add(1.0, scalar_couple_profile({1.0, 1.0, 1.0}));
  EXPECT_THROW(grid_alloc_oracle(wide, 1.0, 100000), std::length_error);
}

TEST(EvalKBatch, SerialMatchesParallel) {
  CaseRng rng(97, 0);
  const KProfile profile = vector_K_profile(random_vector_function(rng));
  std::vector<double> ts;
  for (int j = 0; j < 1000; ++j) ts.push_back(std::ldexp(1.0, -10 + j / 50));
  const auto serial = eval_K_batch(profile, ts, Execution::kSerial);
  const auto parallel = eval_K_batch(profile, ts, Execution::kParallel);
  EXPECT_EQ(serial, parallel);
  for (std::size_t j = 0; j < ts.size(); ++j) EXPECT_EQ(serial[j], eval_K(profile, ts[j]));
}

TEST(SimpleVectorFunction, RejectsNonpositiveMeasure) {
  SimpleVectorFunction f;
  EXPECT_THROW(f.add(0.0, KProfile()), std::invalid_argument);
  EXPECT_THROW(f.add(-1.0, KProfile()), std::invalid_argument);
  EXPECT_EQ(example_one().prefix(1).size(), 1u);
}

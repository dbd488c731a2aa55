#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kfunclab/direct_oracle.hpp"
#include "kfunclab/embedding.hpp"
#include "kfunclab/lorentz.hpp"
#include "kfunclab/random.hpp"

using namespace kfunclab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

KProfile unit_profile() { return KProfile(StepFunction::indicator(1.0)); }

SimpleVectorFunction example_one() {
  SimpleVectorFunction f;
  f.add(1.0, scalar_couple_profile({1.0, 1.0, 1.0}));
  f.add(1.0, scalar_couple_profile({1.0, 2.0, 1.0}));
  return f;
}

std::vector<double> log_ts() {
  std::vector<double> ts;
  for (int j = 0; j < 16; ++j) ts.push_back(std::exp2(-6.0 + 12.0 * j / 15.0));
  return ts;
}

// (theta, 2) norm from the closed form of int t^{-2 theta - 1} (c + m t)^2
// over each linear piece of K plus the constant tail.
double interp_q2_closed_form(const KProfile& profile, double theta) {
  const auto antiderivative = [](double e, double t) {
    return e == 0.0 ? std::log(t) : std::pow(t, e) / e;
  };
  const double base = -2.0 * theta;
  double sum = 0.0;
  double K_left = 0.0;
  double left = 0.0;
  const auto& k = profile.derivative();
  for (std::size_t j = 0; j < k.size(); ++j) {
    const double m = k.values()[j];
    const double c = K_left - m * left;
    const double right = k.breakpoints()[j];
    const double coefficients[3] = {c * c, 2.0 * c * m, m * m};
    for (int i = 0; i < 3; ++i) {
      if (coefficients[i] == 0.0) continue;
      const double lower = left == 0.0 ? 0.0 : antiderivative(base + i, left);
      sum += coefficients[i] * (antiderivative(base + i, right) - lower);
    }
    K_left += m * (right - left);
    left = right;
  }
  sum -= K_left * K_left * antiderivative(base, left);
  return std::sqrt(sum);
}

// Linear scan of n^{-1/p} v > t in the equivalent form v^p > n t^p, exact
// for the dyadic values and integer exponents used below.
double brute_section_count(double value, double p, double t) {
  const double value_power = std::pow(value, p);
  const double t_power = std::pow(t, p);
  double n = 0.0;
  while (value_power > (n + 1.0) * t_power) n += 1.0;
  return n;
}

}  // namespace

TEST(PsiStar, Examples) {
  SimpleVectorFunction single;
  single.add(1.0, unit_profile());
  EXPECT_EQ(psi_star(single).rearranged, StepFunction::indicator(1.0));

  SimpleVectorFunction two;
  two.add(1.0, unit_profile());
  two.add(1.0, KProfile(StepFunction::indicator(0.5, 2.0)));
  EXPECT_EQ(psi_star(two).rearranged, StepFunction({0.5, 1.5}, {2.0, 1.0}));

  SimpleVectorFunction heavy;
  heavy.add(2.0, unit_profile());
  EXPECT_EQ(psi_star(heavy).rearranged, StepFunction::indicator(2.0));
}

TEST(Eq10Check, Examples) {
  const auto ts = log_ts();
  SimpleVectorFunction single;
  single.add(3.0, unit_profile());
  EXPECT_EQ(eq10_check(single, ts), 0.0);
  EXPECT_LE(eq10_check(example_one(), ts), 1e-9);
  EXPECT_EQ(eq10_check(SimpleVectorFunction(), ts), 0.0);
}

// The integral of psi* must equal K_t as the infimum over decompositions,
// computed by the direct oracle without any rearrangement.
TEST(Eq10Check, PsiIntegralMatchesDirectOracle) {
  for (std::uint64_t c = 0; c < 200; ++c) {
    CaseRng rng(173, c);
    const ScalarInstance inst = random_scalar_instance(rng);
    const StepFunction psi = psi_star(profiles(inst)).rearranged;
    for (double t : log_ts()) {
      const double direct = direct_K(inst, t);
      EXPECT_NEAR(integrate(psi, t), direct, 1e-12 * std::max(1.0, direct));
    }
  }
}

TEST(Eq10Check, RandomVectorFunctions) {
  for (std::uint64_t c = 0; c < 200; ++c) {
    CaseRng rng(179, c);
    EXPECT_LE(eq10_check(random_vector_function(rng), log_ts()), 1e-9);
  }
}

TEST(Eq11Norm, Examples) {
  SimpleVectorFunction single;
  single.add(1.0, unit_profile());
  const Eq11Result sup = eq11_norm(single, 0.5, kInf);
  EXPECT_EQ(sup.lhs, sup.rhs);
  EXPECT_NEAR(sup.lhs, 1.0, 1e-15);

  const Eq11Result two = eq11_norm(example_one(), 0.5, 2.0);
  EXPECT_LE(two.deviation, 1e-8);

  const Eq11Result zero = eq11_norm(SimpleVectorFunction(), 0.5, 2.0);
  EXPECT_EQ(zero.lhs, 0.0);
  EXPECT_EQ(zero.rhs, 0.0);
  EXPECT_EQ(zero.deviation, 0.0);
}

TEST(Eq11Norm, BothSidesMatchClosedForm) {
  for (std::uint64_t c = 0; c < 100; ++c) {
    CaseRng rng(181, c);
    const SimpleVectorFunction f = random_vector_function(rng);
    for (double theta : {0.25, 0.5, 0.75}) {
      const Eq11Result r = eq11_norm(f, theta, 2.0);
      const double expected = interp_q2_closed_form(vector_K_profile(f), theta);
      EXPECT_NEAR(r.lhs, expected, 1e-9 * expected);
      EXPECT_NEAR(r.rhs, expected, 1e-9 * expected);
      EXPECT_LE(r.deviation, 1e-8);
    }
  }
}

TEST(TpNormExact, Examples) {
  EXPECT_DOUBLE_EQ(tp_norm_exact(unit_profile(), 2.0), 2.0);
  EXPECT_DOUBLE_EQ(tp_norm_exact(KProfile(StepFunction::indicator(1.0, 2.0)), 2.0), 4.0);
  EXPECT_EQ(tp_norm_exact(KProfile(), 2.0), 0.0);
  EXPECT_THROW(tp_norm_exact(unit_profile(), 1.0), std::domain_error);
}

TEST(LogGrid, NodesNestAndSnap) {
  const auto coarse = log_grid(1e-2, 1e2, 4);
  ASSERT_EQ(coarse.size(), 17u);
  EXPECT_DOUBLE_EQ(coarse.front(), 1e-2);
  EXPECT_DOUBLE_EQ(coarse.back(), 1e2);
  const auto fine = log_grid(1e-2, 1e2, 8);
  for (std::size_t j = 0; j < coarse.size(); ++j) EXPECT_EQ(coarse[j], fine[2 * j]);
  const auto wide = log_grid(1e-3, 1e3, 4);
  for (std::size_t j = 0; j < coarse.size(); ++j) EXPECT_EQ(coarse[j], wide[4 + j]);
  EXPECT_THROW(log_grid(1.0, 1.1, 8), std::invalid_argument);
  EXPECT_THROW(log_grid(0.0, 1.0, 8), std::invalid_argument);
  EXPECT_THROW(log_grid(2.0, 1.0, 8), std::invalid_argument);
}

TEST(TpNormNumeric, UnitProfileWithinOnePercent) {
  const double value = tp_norm_numeric(unit_profile(), 2.0, 1e-6, 1e6, 8);
  EXPECT_NEAR(value, 2.0, 0.02);
  EXPECT_EQ(tp_norm_numeric(KProfile(), 2.0, 1e-6, 1e6, 8), 0.0);
}

TEST(TpNormNumeric, WindowWideningNeverDecreases) {
  CaseRng rng(191, 0);
  const KProfile profile = random_profile(rng, 4, -2.0, 2.0);
  for (CellScale scale : {CellScale::kGeometricMid, CellScale::kRightEndpoint,
                          CellScale::kLeftEndpoint}) {
    double previous = 0.0;
    for (int decades = 2; decades <= 6; ++decades) {
      const double w = std::pow(10.0, decades);
      const double value = tp_norm_numeric(profile, 2.0, 1.0 / w, w, 8, scale);
      EXPECT_GE(value, previous * (1.0 - 1e-12)) << "decades " << decades;
      previous = value;
    }
  }
}

TEST(TpNormNumeric, RightEndpointIsMonotoneLowerBound) {
  for (std::uint64_t c = 0; c < 5; ++c) {
    CaseRng rng(193, c);
    const KProfile profile = random_profile(rng, 4, -2.0, 2.0);
    for (double p : {1.5, 3.0}) {
      const double exact = tp_norm_exact(profile, p);
      double previous = 0.0;
      for (double cpd : {1.0, 2.0, 4.0, 8.0}) {
        const double value =
            tp_norm_numeric(profile, p, 1e-4, 1e4, cpd, CellScale::kRightEndpoint);
        EXPECT_LE(value, exact * (1.0 + 1e-12));
        EXPECT_GE(value, previous * (1.0 - 1e-12));
        previous = value;
      }
    }
  }
}

TEST(TpNormNumeric, LeftEndpointNonincreasingUnderRefinement) {
  CaseRng rng(197, 0);
  const KProfile profile = random_profile(rng, 4, -2.0, 2.0);
  double previous = kInf;
  for (double cpd : {1.0, 2.0, 4.0, 8.0}) {
    const double value = tp_norm_numeric(profile, 2.0, 1e-4, 1e4, cpd, CellScale::kLeftEndpoint);
    EXPECT_LE(value, previous * (1.0 + 1e-12));
    previous = value;
  }
}

// t^{1/p} psi*(t) is flat across the resolved range: the level set
// {omega^{-1/p} k(s) > v} of the discretized T_p image has measure
// v^{-p} int k^p, up to one cell's scale ratio.
TEST(TpDiscretize, PsiStarScalingLaw) {
  const double p = 2.0;
  const double cpd = 16.0;
  CaseRng rng(199, 0);
  const KProfile profile = random_profile(rng, 4, -2.0, 2.0);
  const double constant = std::pow(integrate(power(profile.derivative(), p), kInf), 1.0 / p);
  const StepFunction psi =
      psi_star(tp_discretize(profile, p, 1e-6, 1e6, cpd, CellScale::kGeometricMid)).rearranged;
  const double cell_ratio = std::pow(10.0, 1.0 / (cpd * p));
  for (double t : {1e-3, 1e-2, 1.0, 1e2, 1e3}) {
    const double scaled_value = std::pow(t, 1.0 / p) * evaluate(psi, t);
    EXPECT_LE(scaled_value, constant * cell_ratio) << "t=" << t;
    EXPECT_GE(scaled_value, constant / cell_ratio) << "t=" << t;
  }
}

TEST(TpDiscretize, SerialMatchesParallel) {
  CaseRng rng(211, 0);
  const KProfile profile = random_profile(rng);
  const SimpleVectorFunction serial =
      tp_discretize(profile, 2.0, 1e-5, 1e5, 32, CellScale::kGeometricMid, Execution::kSerial);
  const SimpleVectorFunction parallel =
      tp_discretize(profile, 2.0, 1e-5, 1e5, 32, CellScale::kGeometricMid, Execution::kParallel);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t j = 0; j < serial.size(); ++j) {
    EXPECT_EQ(serial.cells()[j].mu, parallel.cells()[j].mu);
    EXPECT_EQ(serial.cells()[j].profile, parallel.cells()[j].profile);
  }
}

TEST(Eq13Check, Examples) {
  const ValueMassList one{{1.0, 1.0}};
  const IdentitySides a = eq13_distribution_check(one, 1.0, 0.5);
  EXPECT_DOUBLE_EQ(a.lhs, 1.0);
  EXPECT_DOUBLE_EQ(a.rhs, 1.0);

  const ValueMassList two{{2.0, 3.0}};
  const IdentitySides b = eq13_distribution_check(two, 2.0, 1.0);
  EXPECT_DOUBLE_EQ(b.lhs, 12.0);
  EXPECT_DOUBLE_EQ(b.rhs, 12.0);

  const IdentitySides c = eq13_distribution_check(two, 2.0, 1e6);
  EXPECT_NEAR(c.lhs, c.rhs, 1e-12 * c.rhs);

  EXPECT_THROW(eq13_distribution_check(one, 0.0, 1.0), std::domain_error);
  EXPECT_THROW(eq13_distribution_check(one, 1.0, 0.0), std::domain_error);
}

TEST(Eq13Check, RandomLevels) {
  for (std::uint64_t c = 0; c < 500; ++c) {
    CaseRng rng(223, c);
    const ValueMassList levels = random_levels(rng);
    const double p = rng.uniform(0.5, 4.0);
    const double t = rng.log_uniform2(-4.0, 4.0);
    const IdentitySides r = eq13_distribution_check(levels, p, t);
    EXPECT_NEAR(r.lhs, r.rhs, 1e-12 * std::max(1.0, r.rhs));
  }
}

TEST(StrictFloor, Convention) {
  EXPECT_EQ(strict_floor(4.0), 3.0);
  EXPECT_EQ(strict_floor(2.5), 2.0);
  EXPECT_EQ(strict_floor(1.0), 0.0);
  EXPECT_EQ(strict_floor(0.5), 0.0);
  EXPECT_EQ(strict_floor(0.0), 0.0);
}

TEST(SpCheck, Examples) {
  const ValueMassList one{{1.0, 1.0}};
  const IdentitySides a = sp_distribution_check(one, 1.0, 0.4);
  EXPECT_EQ(a.lhs, 2.0);
  EXPECT_EQ(a.rhs, 2.0);

  const IdentitySides b = sp_distribution_check(one, 1.0, 1.0);
  EXPECT_EQ(b.lhs, 0.0);
  EXPECT_EQ(b.rhs, 0.0);

  const ValueMassList two{{2.0, 1.0}};
  const IdentitySides c = sp_distribution_check(two, 2.0, 1.0);
  EXPECT_EQ(c.lhs, 3.0);
  EXPECT_EQ(c.rhs, 3.0);
}

TEST(SpCheck, SectionCountMatchesBruteForce) {
  for (std::uint64_t c = 0; c < 300; ++c) {
    CaseRng rng(227, c);
    const double value = static_cast<double>(rng.index(1, 16)) / 4.0;
    const double p = static_cast<double>(rng.index(1, 3));
    const double t = value / std::exp2(static_cast<double>(rng.index(0, 3)));
    EXPECT_EQ(sp_section_count(value, p, t), brute_section_count(value, p, t))
        << value << ' ' << p << ' ' << t;
    const double t_off = rng.uniform(0.05, 1.0) * value;
    EXPECT_EQ(sp_section_count(value, p, t_off), brute_section_count(value, p, t_off));
  }
  EXPECT_THROW(sp_section_count(1.0, 2.0, 1e-200), std::overflow_error);
}

TEST(SpCheck, WeakNormBoundedByLp) {
  for (std::uint64_t c = 0; c < 200; ++c) {
    CaseRng rng(229, c);
    const ValueMassList levels = random_levels(rng);
    const double p = static_cast<double>(rng.index(1, 4));
    std::vector<double> ts;
    // Values are at most 4 and p at most 4, so counts stay below 2^48.
    for (int j = 0; j <= 28; ++j) ts.push_back(std::exp2(-10.0 + 0.5 * j));
    const double lp = lp_norm(levels, p);
    const double weak = sp_weak_norm(levels, p, ts);
    EXPECT_LE(weak, lp * (1.0 + 1e-12));
    // At the smallest sampled t each count misses at most one term.
    double total_mass = 0.0;
    for (const Level& l : levels) total_mass += l.mass;
    const double floor_bound =
        std::pow(std::max(0.0, std::pow(lp, p) - std::pow(ts.front(), p) * total_mass), 1.0 / p);
    EXPECT_GE(weak, floor_bound * (1.0 - 1e-12));
  }
}

TEST(Remark7Sandwich, Examples) {
  SimpleVectorFunction single;
  single.add(1.0, unit_profile());
  const Remark7Sandwich s = remark7_sandwich(single, 0.5);
  EXPECT_DOUBLE_EQ(s.lp, 1.0);
  EXPECT_NEAR(s.interp, std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(s.holds);

  const Remark7Sandwich zero = remark7_sandwich(SimpleVectorFunction(), 0.5);
  EXPECT_EQ(zero.lp, 0.0);
  EXPECT_EQ(zero.ratio, 1.0);
  EXPECT_TRUE(zero.holds);
}

TEST(Remark7Sandwich, HoldsOnRandomFunctions) {
  for (std::uint64_t c = 0; c < 200; ++c) {
    CaseRng rng(233, c);
    const SimpleVectorFunction f = random_vector_function(rng);
    for (double theta : {0.25, 0.5, 0.75}) {
      const Remark7Sandwich s = remark7_sandwich(f, theta);
      EXPECT_TRUE(s.holds) << "case " << c << " theta " << theta << " ratio " << s.ratio;
    }
  }
}

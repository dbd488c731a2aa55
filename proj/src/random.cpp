#include "kfunclab/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace kfunclab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CaseRng::CaseRng(std::uint64_t seed, std::uint64_t case_index)
    : engine_(splitmix64(seed ^ splitmix64(case_index))) {}

double CaseRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double CaseRng::log_uniform2(double lo_exp, double hi_exp) {
  return std::exp2(uniform(lo_exp, hi_exp));
}

std::size_t CaseRng::index(std::size_t lo, std::size_t hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  return std::min(hi, lo + static_cast<std::size_t>(uniform() * span));
}

ScalarInstance random_scalar_instance(CaseRng& rng, std::size_t max_coords) {
  ScalarInstance inst;
  const std::size_t n = rng.index(1, max_coords);
  for (std::size_t i = 0; i < n; ++i) {
    const double mu = rng.log_uniform2(-4.0, 4.0);
    const double a = rng.log_uniform2(-4.0, 4.0);
    const double b = rng.log_uniform2(-4.0, 4.0);
    const double x = rng.uniform(-4.0, 4.0);
    inst.coords.push_back({mu, {a, b, x}});
  }
  return inst;
}

KProfile random_profile(CaseRng& rng, std::size_t max_pieces, double lo_exp, double hi_exp) {
  const std::size_t n = rng.index(1, max_pieces);
  std::vector<double> breaks(n);
  std::vector<double> values(n);
  for (std::size_t j = 0; j < n; ++j) {
    breaks[j] = rng.log_uniform2(lo_exp, hi_exp);
    values[j] = rng.log_uniform2(-2.0, 2.0);
  }
  std::sort(breaks.begin(), breaks.end());
  std::sort(values.begin(), values.end(), std::greater<>());
  return KProfile(StepFunction(std::move(breaks), std::move(values), 0.0));
}

SimpleVectorFunction random_vector_function(CaseRng& rng, std::size_t max_cells,
                                            std::size_t max_pieces) {
  SimpleVectorFunction f;
  const std::size_t n = rng.index(1, max_cells);
  for (std::size_t i = 0; i < n; ++i) {
    const double mu = rng.log_uniform2(-3.0, 3.0);
    f.add(mu, random_profile(rng, max_pieces));
  }
  return f;
}

ValueMassList random_levels(CaseRng& rng, std::size_t max_levels) {
  ValueMassList levels;
  const std::size_t n = rng.index(1, max_levels);
  for (std::size_t i = 0; i < n; ++i) {
    const double value = static_cast<double>(rng.index(0, 16)) / 4.0;
    levels.push_back({value, rng.log_uniform2(-3.0, 3.0)});
  }
  return levels;
}

}  // namespace kfunclab

#include "kfunclab/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace kfunclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

// Builds a canonical monotone step function from consecutive (value, length)
// runs starting at 0. Runs must already be sorted by nonincreasing value.
StepFunction from_runs(const std::vector<Level>& runs) {
  std::vector<double> breaks;
  std::vector<double> values;
  breaks.reserve(runs.size());
  values.reserve(runs.size());
  double end = 0.0;
  for (const Level& run : runs) {
    end += run.mass;
    breaks.push_back(end);
    values.push_back(run.value);
  }
  return StepFunction(std::move(breaks), std::move(values), 0.0);
}

}  // namespace

void validate_levels(std::span<const Level> levels) {
  for (const Level& level : levels) {
    if (!finite_nonnegative(level.value)) {
      throw std::invalid_argument("level value must be finite and >= 0");
    }
    if (!(std::isfinite(level.mass) && level.mass > 0.0)) {
      throw std::invalid_argument("level mass must be finite and > 0");
    }
  }
}

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values,
                           double tail)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)), tail_(tail) {
  if (breakpoints_.size() != values_.size()) {
    throw std::invalid_argument("StepFunction: breakpoints and values differ in length");
  }
  if (!finite_nonnegative(tail_)) {
    throw std::invalid_argument("StepFunction: tail must be finite and >= 0");
  }
  double previous = 0.0;
  for (std::size_t j = 0; j < breakpoints_.size(); ++j) {
    const double s = breakpoints_[j];
    if (!std::isfinite(s) || s <= 0.0) {
      throw std::invalid_argument("StepFunction: breakpoints must be finite and > 0");
    }
    if (s < previous) {
      throw std::invalid_argument("StepFunction: breakpoints must be increasing (index " +
                                  std::to_string(j) + ")");
    }
    if (!finite_nonnegative(values_[j])) {
      throw std::invalid_argument("StepFunction: values must be finite and >= 0");
    }
    previous = s;
  }
  canonicalize();
}

StepFunction StepFunction::indicator(double length, double value) {
  return StepFunction({length}, {value}, 0.0);
}

void StepFunction::canonicalize() {
  std::vector<double> breaks;
  std::vector<double> values;
  breaks.reserve(breakpoints_.size());
  values.reserve(values_.size());
  double previous = 0.0;
  for (std::size_t j = 0; j < breakpoints_.size(); ++j) {
    if (breakpoints_[j] == previous) continue;  // zero-length piece
    previous = breakpoints_[j];
    if (!values.empty() && values.back() == values_[j]) {
      breaks.back() = breakpoints_[j];
    } else {
      breaks.push_back(breakpoints_[j]);
      values.push_back(values_[j]);
    }
  }
  while (!values.empty() && values.back() == tail_) {
    values.pop_back();
    breaks.pop_back();
  }
  breakpoints_ = std::move(breaks);
  values_ = std::move(values);
}

double StepFunction::support_end() const {
  return breakpoints_.empty() ? 0.0 : breakpoints_.back();
}

bool StepFunction::is_monotone() const {
  for (std::size_t j = 1; j < values_.size(); ++j) {
    if (values_[j] > values_[j - 1]) return false;
  }
  return values_.empty() || values_.back() >= tail_;
}

double evaluate(const StepFunction& f, double s) {
  if (!(s > 0.0)) throw std::domain_error("evaluate: s must be > 0");
  const auto breaks = f.breakpoints();
  const auto it = std::lower_bound(breaks.begin(), breaks.end(), s);
  if (it == breaks.end()) return f.tail();
  return f.values()[static_cast<std::size_t>(it - breaks.begin())];
}

double integrate(const StepFunction& f, double t) {
  if (!(t >= 0.0)) throw std::domain_error("integrate: t must be >= 0");
  const auto breaks = f.breakpoints();
  const auto values = f.values();
  double sum = 0.0;
  double left = 0.0;
  for (std::size_t j = 0; j < breaks.size(); ++j) {
    if (t <= left) return sum;
    sum += values[j] * (std::min(t, breaks[j]) - left);
    left = breaks[j];
  }
  if (t > left && f.tail() > 0.0) {
    sum += (t == kInf) ? kInf : f.tail() * (t - left);
  }
  return sum;
}

double distribution(const StepFunction& f, double level) {
  if (f.tail() > level) return kInf;
  const auto breaks = f.breakpoints();
  const auto values = f.values();
  double measure = 0.0;
  double left = 0.0;
  for (std::size_t j = 0; j < breaks.size(); ++j) {
    if (values[j] > level) measure += breaks[j] - left;
    left = breaks[j];
  }
  return measure;
}

StepFunction rearrange(ValueMassList levels) {
  validate_levels(levels);
  std::erase_if(levels, [](const Level& l) { return l.value == 0.0; });
  std::stable_sort(levels.begin(), levels.end(),
                   [](const Level& a, const Level& b) { return a.value > b.value; });
  return from_runs(levels);
}

StepFunction merge_rearranged(std::span<const WeightedStep> parts) {
  struct Head {
    double value;
    std::size_t part;
    std::size_t piece;
  };
  // Max-heap on value; ties resolved by part index for a stable order.
  auto lower = [](const Head& a, const Head& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.part > b.part;
  };
  std::priority_queue<Head, std::vector<Head>, decltype(lower)> heads(lower);

  std::size_t total_pieces = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const WeightedStep& part = parts[i];
    if (!(std::isfinite(part.weight) && part.weight > 0.0)) {
      throw std::invalid_argument("merge_rearranged: weights must be finite and > 0");
    }
    if (!part.f.has_finite_support()) {
      throw std::invalid_argument("merge_rearranged: parts must have tail 0");
    }
    if (!part.f.is_monotone()) {
      throw std::invalid_argument("merge_rearranged: parts must be nonincreasing");
    }
    if (!part.f.empty()) heads.push({part.f.values()[0], i, 0});
    total_pieces += part.f.size();
  }

  std::vector<Level> runs;
  runs.reserve(total_pieces);
  while (!heads.empty()) {
    const Head head = heads.top();
    heads.pop();
    const StepFunction& f = parts[head.part].f;
    const auto breaks = f.breakpoints();
    const double left = head.piece == 0 ? 0.0 : breaks[head.piece - 1];
    runs.push_back({head.value, parts[head.part].weight * (breaks[head.piece] - left)});
    if (head.piece + 1 < f.size()) {
      heads.push({f.values()[head.piece + 1], head.part, head.piece + 1});
    }
  }
  return from_runs(runs);
}

StepFunction power(const StepFunction& f, double p) {
  if (!(p > 0.0)) throw std::domain_error("power: exponent must be > 0");
  std::vector<double> values(f.values().begin(), f.values().end());
  for (double& v : values) v = std::pow(v, p);
  return StepFunction({f.breakpoints().begin(), f.breakpoints().end()}, std::move(values),
                      std::pow(f.tail(), p));
}

StepFunction scale_values(const StepFunction& f, double lambda) {
  if (!finite_nonnegative(lambda)) {
    throw std::invalid_argument("scale_values: factor must be finite and >= 0");
  }
  std::vector<double> values(f.values().begin(), f.values().end());
  for (double& v : values) v *= lambda;
  return StepFunction({f.breakpoints().begin(), f.breakpoints().end()}, std::move(values),
                      f.tail() * lambda);
}

ValueMassList to_levels(const StepFunction& f, double weight) {
  if (!f.has_finite_support()) {
    throw std::invalid_argument("to_levels: function must have tail 0");
  }
  ValueMassList levels;
  levels.reserve(f.size());
  double left = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double right = f.breakpoints()[j];
    if (f.values()[j] > 0.0) levels.push_back({f.values()[j], weight * (right - left)});
    left = right;
  }
  return levels;
}

}  // namespace kfunclab

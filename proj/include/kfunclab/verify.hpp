#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "kfunclab/parallel.hpp"

namespace kfunclab {

/// Seeded identity suites. Each case draws its data from its own CaseRng,
/// so results do not depend on the execution policy or thread count.
enum class Suite { kTheorem1, kTheorem2, kEq10, kEq11, kEq13, kEq14, kSp, kHardy, kRemark7 };

std::optional<Suite> parse_suite(std::string_view name);
std::string_view suite_name(Suite suite);
std::vector<Suite> all_suites();

struct SuiteDefaults {
  std::size_t cases;
  double tol;
};

SuiteDefaults suite_defaults(Suite suite);

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t cases = 0;  ///< 0 selects the suite default
  double tol = 0.0;       ///< 0 selects the suite default
  Execution exec = Execution::kParallel;
};

/// One row of the per-case CSV.
///
/// `size` is the number of coordinates, cells, levels or pieces drawn.
/// `extra` is suite specific: the monotone flag (theorem2), numeric/exact
/// ratio (eq14), worst bound ratio / p' (hardy, remark7), weak-norm ratio
/// at the smallest t (sp), largest quadrature error estimate (eq11), and
/// the data scale elsewhere.
struct CaseResult {
  std::size_t index = 0;
  std::size_t size = 0;
  double abs_dev = 0.0;
  double rel_dev = 0.0;
  double extra = 0.0;
  bool pass = true;
};

struct SuiteReport {
  Suite suite = Suite::kTheorem1;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<CaseResult> cases;
  double max_rel_dev = 0.0;
  double worst_extra = 0.0;  ///< max of `extra` over cases
  bool pass = true;
  std::string note;          ///< human-readable detail, e.g. worst ratio
};

SuiteReport run_suite(Suite suite, const SuiteOptions& options);

/// %.17g formatting used by every CSV writer.
std::string format_double(double value);

/// Header "case,size,abs_dev,rel_dev,extra,pass" then one row per case.
void write_case_csv(std::ostream& out, const SuiteReport& report);

/// Header "suite,cases,max_rel_dev,pass" and one row.
void write_summary_csv(std::ostream& out, const SuiteReport& report);

/// The sixteen log-spaced points 2^{-6 + 12 j / 15}, j = 0..15.
std::vector<double> default_t_grid();

}  // namespace kfunclab

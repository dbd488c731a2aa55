#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kfunclab/allocation.hpp"
#include "kfunclab/direct_oracle.hpp"
#include "kfunclab/step_function.hpp"

namespace kfunclab {

inline constexpr int kInstanceVersion = 1;

/// {"scalar": {"mu", "a", "b", "x"}}
struct ScalarEntry {
  double mu = 1.0;
  WeightedScalarCouple couple;
  bool operator==(const ScalarEntry& o) const {
    return mu == o.mu && couple.a == o.couple.a && couple.b == o.couple.b &&
           couple.x == o.couple.x;
  }
};

/// {"profile": {"mu", "k": [[s_break, value], ...]}}, tail 0 implicit.
struct ProfileEntry {
  double mu = 1.0;
  std::vector<std::pair<double, double>> k;
  bool operator==(const ProfileEntry&) const = default;
};

/// {"levels": [[value, mass], ...], "mu"?}: a scalar (L1, Linf) element.
struct LevelsEntry {
  double mu = 1.0;
  ValueMassList levels;
  bool operator==(const LevelsEntry&) const = default;
};

using CoordinateEntry = std::variant<ScalarEntry, ProfileEntry, LevelsEntry>;

/// Serialized problem description: {"version": 1, "coordinates": [...]}.
struct Instance {
  int version = kInstanceVersion;
  std::vector<CoordinateEntry> coordinates;
  bool operator==(const Instance&) const = default;
};

/// Parses and schema-validates an instance. Throws InputError whose message
/// starts with `source:line:column:` (syntax) or `source:line:` (schema).
Instance parse_instance(std::string_view text, std::string_view source = "<input>");

/// Reads and parses a file; unreadable files raise InputError.
Instance load_instance(const std::filesystem::path& path);

/// Canonical text form, one coordinate per line.
std::string serialize_instance(const Instance& instance);

/// Cells (mu, K-profile) of every coordinate, in file order.
SimpleVectorFunction to_vector_function(const Instance& instance);

/// The weighted-scalar view when every coordinate is a scalar entry.
std::optional<ScalarInstance> as_scalar_instance(const Instance& instance);

}  // namespace kfunclab

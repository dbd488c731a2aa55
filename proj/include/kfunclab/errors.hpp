#pragma once

#include <stdexcept>
#include <string>

namespace kfunclab {

/// A norm integral that does not converge for the given data/exponents.
class DivergentNorm : public std::runtime_error {
 public:
  explicit DivergentNorm(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or schema-invalid instance input. The message carries a
/// `source:line:column:` prefix when a position is known.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kfunclab

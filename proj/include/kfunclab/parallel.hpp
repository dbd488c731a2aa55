#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kfunclab {

/// Selects between the OpenMP kernel and its serial reference. Both paths
/// must produce identical results; only the schedule differs.
enum class Execution { kSerial, kParallel };

inline bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs body(i) for i in [0, n). Iterations must be independent and write
/// only to slot i of their outputs. An exception escaping any iteration is
/// rethrown on the calling thread once the loop has finished.
template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  const auto count = static_cast<std::int64_t>(n);
  if (exec == Execution::kParallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(kfunclab_for_each_index)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::int64_t i = 0; i < count; ++i) {
      body(static_cast<std::size_t>(i));
    }
  }
}

}  // namespace kfunclab

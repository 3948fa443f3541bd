#pragma once

// Parallel kernels. Each kernel has a serial reference path selected by
// Execution::Serial; both paths produce identical, index-ordered results.

#include <cstddef>
#include <exception>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace clusterdouble {

enum class Execution { Serial, Parallel };

inline int available_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Calls body(i) for i in [0, count). Results must be written to
// per-index slots by the body; ordering is the caller's index order.
// The first exception (by index) is rethrown after the loop finishes.
template <typename Body>
void parallel_for_index(std::size_t count, Execution execution, Body&& body) {
  if (execution == Execution::Serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace clusterdouble

#pragma once

// Data-parallel loop helpers. Every kernel in the library takes an
// Execution argument; Execution::serial is the reference path used by the
// tests to check the OpenMP path bit-for-bit.

#include <algorithm>
#include <cstddef>
#include <vector>

#ifdef QUADRIC_HAVE_OPENMP
#include <omp.h>
#endif

namespace quadric {

enum class Execution { serial, parallel };

/// Runs f(i) for i in [0, n). Iterations must be independent.
template <class F>
void for_each_index(Execution exec, std::size_t n, F&& f) {
#ifdef QUADRIC_HAVE_OPENMP
  if (exec == Execution::parallel && n > 1) {
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
    return;
  }
#endif
  (void)exec;
  for (std::size_t i = 0; i < n; ++i) f(i);
}

/// Evaluates f over [0, n) and returns the results in index order.
template <class T, class F>
std::vector<T> map_indices(Execution exec, std::size_t n, F&& f) {
  std::vector<T> out(n);
  for_each_index(exec, n, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

/// max over [0, n) of f(i); 0 for an empty range. The reduction is done
/// after the parallel map so the result does not depend on scheduling.
template <class F>
double max_over(Execution exec, std::size_t n, F&& f) {
  const auto values = map_indices<double>(exec, n, f);
  double best = 0.0;
  for (double v : values) best = std::max(best, v);
  return best;
}

inline int worker_count() {
#ifdef QUADRIC_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace quadric

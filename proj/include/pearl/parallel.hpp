#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pearl {

inline int clamp_threads(int requested) { return requested < 1 ? 1 : requested; }

/// Runs f(i) for i in [0, n). Callers write into per-index slots and merge
/// serially, so results never depend on the schedule.
template <class F>
void parallel_for(std::int64_t n, int threads, F&& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(clamp_threads(threads))
  for (std::int64_t i = 0; i < n; ++i) f(i);
#else
  (void)threads;
  for (std::int64_t i = 0; i < n; ++i) f(i);
#endif
}

}  // namespace pearl

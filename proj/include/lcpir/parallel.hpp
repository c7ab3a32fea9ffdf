#pragma once

#include <cstddef>
#include <cstdint>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace lcpir {

/// Execution policy for the data-parallel kernels. Every kernel has a
/// serial path that is the reference; the parallel path must produce
/// bit-identical results (tasks are independent and write disjoint slots).
enum class Exec { serial, parallel };

template <typename F>
void parallel_for(std::size_t count, Exec exec, F&& body) {
#if defined(_OPENMP)
  if (exec == Exec::parallel) {
    const std::int64_t n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < count; ++i) body(i);
}

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#if defined(_OPENMP)
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace lcpir

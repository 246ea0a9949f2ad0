#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ferl {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs fn(i) for i in [0, n). Iterations must be independent and write only
/// to their own output slots; results are then identical to the serial loop
/// for any thread count.
template <class F>
void parallel_for(std::size_t n, F&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    fn(static_cast<std::size_t>(i));
  }
#else
  for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

namespace serial {

/// Reference loop with the same contract as ferl::parallel_for.
template <class F>
void parallel_for(std::size_t n, F&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace serial
}  // namespace ferl

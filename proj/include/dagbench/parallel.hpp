#pragma once

#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dagbench {

/// Batch kernels (sample generation, collision trials, batch scoring) run in
/// either mode and must produce bit-identical results: every iteration owns a
/// substream Rng derived from its index and writes only to its own slot.
enum class ExecMode { Serial, Parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class F>
void parallel_for(std::size_t n, ExecMode mode, F&& body) {
#ifdef _OPENMP
  if (mode == ExecMode::Parallel) {
    const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < nn; ++i) body(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)mode;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

template <class F>
std::uint64_t parallel_count(std::size_t n, ExecMode mode, F&& pred) {
  std::uint64_t total = 0;
#ifdef _OPENMP
  if (mode == ExecMode::Parallel) {
    const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (long long i = 0; i < nn; ++i) total += pred(static_cast<std::size_t>(i)) ? 1u : 0u;
    return total;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) total += pred(i) ? 1u : 0u;
  return total;
}

}  // namespace dagbench

#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace forge::par {

// 0 means "use all hardware threads"; without OpenMP everything is serial.
inline int resolve_threads(int requested) {
#ifdef _OPENMP
    if (requested <= 0) return omp_get_max_threads();
    return requested;
#else
    (void)requested;
    return 1;
#endif
}

// below this many indices the fork/join overhead dominates; stay serial
inline constexpr std::int64_t kParallelGrain = 2048;

// Index-parallel loop. Bodies must only write to slots addressed by their own
// index so that the result is identical for every thread count.
template <class F>
void for_n(std::int64_t n, int threads, F&& body) {
    threads = resolve_threads(threads);
#ifdef _OPENMP
    if (threads > 1 && n >= kParallelGrain) {
#pragma omp parallel for schedule(static) num_threads(threads)
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace forge::par

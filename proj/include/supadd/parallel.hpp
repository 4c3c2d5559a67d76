#pragma once

#include <cstddef>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace supadd {

/// Execution policy for the data-parallel sweep and restart loops. Results are
/// written into per-index slots and reduced in index order afterwards, so both
/// policies produce bit-identical output.
enum class Exec { serial, parallel };

template <class F>
void parallel_for(std::size_t n, Exec exec, F&& body) {
#if defined(_OPENMP)
    if (exec == Exec::parallel) {
        #pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

inline int worker_count() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_worker_count(int n) {
#if defined(_OPENMP)
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

}  // namespace supadd

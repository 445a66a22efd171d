#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace logsle {

/// serial is the reference implementation; parallel runs the same per-path
/// kernel under OpenMP. Kernels write only to their own path slot and draw
/// from their own substream, so both policies produce identical output.
enum class Exec { serial, parallel };

template <class Fn>
void for_each_path(std::size_t n_paths, Exec exec, Fn&& fn)
{
    if (exec == Exec::serial) {
        for (std::size_t i = 0; i < n_paths; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n_paths); ++i)
        fn(static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n_paths; ++i) fn(i);
#endif
}

inline int worker_count(Exec exec)
{
#ifdef _OPENMP
    return exec == Exec::parallel ? omp_get_max_threads() : 1;
#else
    (void)exec;
    return 1;
#endif
}

} // namespace logsle

#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace uavcre {

/// Number of OpenMP workers, 1 without OpenMP.
inline int worker_count()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/**
 * Runs body(i) for i in [0, n) on the OpenMP team. Iterations must only write
 * state owned by index i. The first exception thrown by any iteration is
 * rethrown on the calling thread once the loop has drained.
 */
template <class Body>
void parallel_for(std::size_t n, Body&& body)
{
    std::exception_ptr failure;
    std::mutex guard;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        }
        catch (...) {
            std::lock_guard lock{guard};
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace uavcre

#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sbo {

// Worker count for the parallel kernels: machine parallelism, optionally
// capped by the SBO_THREADS environment variable.
inline int max_workers() {
#ifdef _OPENMP
    int workers = omp_get_max_threads();
#else
    int workers = 1;
#endif
    if (const char* env = std::getenv("SBO_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < workers) workers = cap;
    }
    return workers;
}

}  // namespace sbo

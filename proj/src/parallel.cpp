#include "torus/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace torus {

namespace {
int configured_threads = 0;
}

void set_thread_count(int n) {
    configured_threads = n;
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#endif
}

int thread_count() {
#ifdef _OPENMP
    if (configured_threads > 0) return configured_threads;
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace torus

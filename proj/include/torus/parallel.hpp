#ifndef TORUS_PARALLEL_HPP
#define TORUS_PARALLEL_HPP

#include <cstddef>

namespace torus {

/// Set the worker-pool size for the OpenMP kernels (0 = library default).
void set_thread_count(int n);
int thread_count();

/// Parallel index loop. Every iteration writes only to its own slots, so the
/// result is bit-identical to the serial reference regardless of scheduling.
template <typename Fn>
void parallel_for(std::ptrdiff_t n, Fn&& fn);

/// Serial reference with the same contract, kept for tests and benchmarks.
template <typename Fn>
void serial_for(std::ptrdiff_t n, Fn&& fn) {
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
}

} // namespace torus

#ifdef _OPENMP
#include <omp.h>

namespace torus {

template <typename Fn>
void parallel_for(std::ptrdiff_t n, Fn&& fn) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
}

} // namespace torus

#else

namespace torus {

template <typename Fn>
void parallel_for(std::ptrdiff_t n, Fn&& fn) {
    serial_for(n, fn);
}

} // namespace torus

#endif

#endif

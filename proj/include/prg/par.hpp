#pragma once

#include <cstddef>

#include <omp.h>

namespace prg {

// jobs == 1   -> plain serial loop (the reference path used by the
//                parallel-consistency tests)
// jobs == 0   -> one thread per core
// jobs  > 1   -> capped at `jobs` threads
//
// Bodies must write only to their own index's slot so that the schedule
// cannot affect results; reductions are folded serially by the caller in
// index order.
template <class F>
void parallel_for(std::size_t count, int jobs, F&& body) {
    if (jobs == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const int threads = jobs <= 0 ? omp_get_max_threads() : jobs;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        body(static_cast<std::size_t>(i));
    }
}

} // namespace prg

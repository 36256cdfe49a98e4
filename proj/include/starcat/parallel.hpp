#pragma once

#include <cstdlib>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace starcat {

// Global worker count. 0 = use the OpenMP default. Set once at startup
// (CLI flag or STARCAT_THREADS); library code only reads it.
inline int& thread_count_ref() {
    static int n = 0;
    return n;
}

inline void set_thread_count(int n) { thread_count_ref() = n < 0 ? 0 : n; }

inline int effective_threads() {
    int n = thread_count_ref();
    if (n > 0) return n;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void init_threads_from_env() {
    if (const char* s = std::getenv("STARCAT_THREADS")) {
        int n = std::atoi(s);
        if (n > 0) set_thread_count(n);
    }
}

// Index-space parallel loop. Results must be written to disjoint slots so
// the outcome is independent of the schedule.
template <class F>
void parallel_for(long n, F&& body) {
#ifdef _OPENMP
    const int nt = effective_threads();
    if (nt > 1 && n > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    for (long i = 0; i < n; ++i) body(i);
}

}  // namespace starcat

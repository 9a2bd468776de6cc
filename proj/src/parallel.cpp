#include "cliffcalc/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cliffcalc {

ExecMode default_exec_mode() {
#ifdef _OPENMP
    return ExecMode::OpenMP;
#else
    return ExecMode::Serial;
#endif
}

int configured_thread_count() {
    const char* env = std::getenv("CLIFFCALC_THREADS");
    if (env == nullptr) return 0;
    const int v = std::atoi(env);
    return v > 0 ? v : 0;
}

void for_each_index_serial(std::size_t count, const std::function<void(std::size_t)>& fn) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
}

void for_each_index_openmp(std::size_t count, const std::function<void(std::size_t)>& fn) {
#ifdef _OPENMP
    const int cap = configured_thread_count();
    const long long n = static_cast<long long>(count);
    if (cap > 0) {
#pragma omp parallel for schedule(static) num_threads(cap)
        for (long long i = 0; i < n; ++i) fn(static_cast<std::size_t>(i));
    } else {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) fn(static_cast<std::size_t>(i));
    }
#else
    for_each_index_serial(count, fn);
#endif
}

void for_each_index(std::size_t count, ExecMode mode, const std::function<void(std::size_t)>& fn) {
    if (mode == ExecMode::OpenMP)
        for_each_index_openmp(count, fn);
    else
        for_each_index_serial(count, fn);
}

}  // namespace cliffcalc

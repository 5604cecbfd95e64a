#include "kfree/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kfree {

namespace {

int detect_threads() {
#ifdef _OPENMP
    int hw = omp_get_max_threads();
#else
    int hw = 1;
#endif
    if (const char* env = std::getenv("KFREE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1 && v < hw) return static_cast<int>(v);
        if (end != env && v >= 1) return hw;
    }
    return hw;
}

std::atomic<int> g_threads{0};

}  // namespace

int max_threads() {
    int t = g_threads.load(std::memory_order_relaxed);
    if (t == 0) {
        t = detect_threads();
        g_threads.store(t, std::memory_order_relaxed);
    }
    return t;
}

void set_max_threads(int threads) {
    g_threads.store(threads < 1 ? 1 : threads, std::memory_order_relaxed);
}

}  // namespace kfree

#pragma once

// Deterministic task splitting: each index writes its own output slot, so the
// result is independent of the thread count. FIBDIFF_THREADS overrides the
// default (hardware concurrency).

#include <cstdlib>
#include <thread>
#include <vector>

namespace fibdiff {

inline int default_thread_count() {
    if (const char* env = std::getenv("FIBDIFF_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    int threads = default_thread_count();
    if (threads <= 1 || count < 64) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::size_t chunk = (count + threads - 1) / static_cast<std::size_t>(threads);
    for (int t = 0; t < threads; ++t) {
        std::size_t lo = static_cast<std::size_t>(t) * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace fibdiff

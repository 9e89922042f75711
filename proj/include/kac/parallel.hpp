#pragma once

#include <algorithm>
#include <cstdlib>
#include <cstddef>
#include <thread>
#include <vector>

namespace kac {

/// Worker count from KAC_WORKERS, else hardware concurrency. Results never
/// depend on it; it only controls how index ranges are carved up.
inline unsigned worker_count() {
    if (const char* env = std::getenv("KAC_WORKERS")) {
        const long v = std::atol(env);
        if (v >= 1) return unsigned(std::min<long>(v, 256));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Run f(begin, end) over a static partition of [0, n). Each worker owns a
/// contiguous range, so writes to preallocated slots never race.
template <class F>
void parallel_ranges(std::size_t n, F&& f) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n ? n : 1);
    if (workers <= 1 || n < 2) {
        f(std::size_t(0), n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = std::min(n, w * chunk);
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&f, lo, hi] { f(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

} // namespace kac

#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace dotprod::detail {

inline unsigned effective_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs body(begin, end) over static contiguous blocks of [0, n). Results
/// must be written to per-index slots or merged order-independently; every
/// partition yields the same answer, so thread count never changes output.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
    threads = effective_threads(threads);
    if (threads <= 1 || n < 2 * threads) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        if (lo >= n) break;
        const std::size_t hi = lo + chunk < n ? lo + chunk : n;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace dotprod::detail

#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace perfhom {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work items must
/// write to disjoint state; scheduling order is unspecified, so determinism
/// comes from combining per-item results in a fixed order afterwards.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    std::size_t worker_count = static_cast<std::size_t>(threads);
    if (hw > 0) worker_count = std::min<std::size_t>(worker_count, hw);
    worker_count = std::min(worker_count, n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
        workers.emplace_back([&next, n, &fn]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (std::thread& t : workers) t.join();
}

}  // namespace perfhom

#pragma once

// Minimal index-parallel map. Results land in index order, so output is
// independent of scheduling. The first exception thrown by a task is
// rethrown on the calling thread.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qpair {

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) return;
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const auto n = static_cast<std::size_t>(threads);
        pool.reserve(std::min(n, count));
        for (std::size_t t = 0; t < std::min(n, count); ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, unsigned threads, Fn&& fn) {
    std::vector<T> out(count);
    parallel_for(count, threads, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

}  // namespace qpair

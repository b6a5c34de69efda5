#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "gbpq/pathfinding.hpp"

namespace gbpq::detail {

/// Runs fn(i, workspace) for i in [0, count). Each worker owns one search
/// workspace; items are handed out through a shared counter. The first
/// exception thrown by any item is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, std::size_t node_count, Fn &&fn) {
    if (threads <= 1 || count <= 1) {
        SearchWorkspace ws(node_count);
        for (std::size_t i = 0; i < count; ++i) fn(i, ws);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> workers;
        const auto n = std::min<std::size_t>(threads, count);
        for (std::size_t t = 0; t < n; ++t) {
            workers.emplace_back([&] {
                SearchWorkspace ws(node_count);
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i, ws);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next = count;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace gbpq::detail

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace disparity {

/// Resolves a requested thread count; 0 means one per hardware thread.
[[nodiscard]] inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(begin, end) over disjoint chunks of [0, count) on up to `threads` workers.
/// If any chunk throws, the exception from the lowest-indexed failing chunk is rethrown.
template <typename Body>
void parallel_chunks(std::size_t count, unsigned threads, Body&& body) {
    if (count == 0) return;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
    if (workers == 1) {
        body(std::size_t{0}, count);
        return;
    }
    const std::size_t chunk = std::max<std::size_t>(1, count / (std::size_t{workers} * 8));
    const std::size_t n_chunks = (count + chunk - 1) / chunk;

    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed_chunk = n_chunks;
    std::exception_ptr failure;

    auto run = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            try {
                body(c * chunk, std::min(count, (c + 1) * chunk));
            } catch (...) {
                std::lock_guard lock(mu);
                if (c < failed_chunk) {
                    failed_chunk = c;
                    failure = std::current_exception();
                }
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
        run();
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace disparity

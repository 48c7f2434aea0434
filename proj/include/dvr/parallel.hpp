#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "dvr/core.hpp"

namespace dvr {

inline unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Run fn(chunk_index, begin, end) over [0, total) split into contiguous
/// chunks, one per worker. Each chunk writes only worker-local state; callers
/// merge the per-chunk outputs afterwards, which keeps results independent of
/// the worker count.
template <typename Fn>
void parallel_chunks(index_t total, unsigned workers, Fn&& fn) {
    if (total <= 0) return;
    const unsigned w = static_cast<unsigned>(
        std::min<index_t>(total, static_cast<index_t>(resolve_workers(workers))));
    if (w <= 1) {
        fn(0u, index_t{0}, total);
        return;
    }

    std::vector<std::thread> threads;
    threads.reserve(w);
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const index_t base = total / w, extra = total % w;
    index_t begin = 0;
    for (unsigned c = 0; c < w; ++c) {
        const index_t len = base + (c < static_cast<unsigned>(extra) ? 1 : 0);
        const index_t end = begin + len;
        threads.emplace_back([&, c, begin, end] {
            try {
                fn(c, begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dvr

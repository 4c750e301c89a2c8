#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace facepool {

// Worker count from the FACEPOOL_THREADS environment variable (default 1).
// The count must never change results: parallel loops only perform disjoint
// per-index slot writes.
inline unsigned worker_count() {
    const char* env = std::getenv("FACEPOOL_THREADS");
    if (!env || *env == '\0') return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v <= 1) return 1;
    // Cap requests rather than clamping to the visible core count so the
    // threaded path stays testable on single-core machines.
    return static_cast<unsigned>(std::min<long>(v, 256));
}

// Runs fn(i) for every i in [0, n), split into contiguous chunks across
// workers. fn must only write state owned by index i.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned workers = worker_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([lo, hi, &fn, &first_error, &error_mutex] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace facepool

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cyclo {

// Default worker count: CYCLOMOMENT_THREADS if set, else 1.
inline int env_default_threads() {
    if (const char* s = std::getenv("CYCLOMOMENT_THREADS")) {
        const int v = std::atoi(s);
        if (v >= 1) return v;
    }
    return 1;
}

// Static block partition of [0, n) over `threads` workers.  Results must be
// written to per-index slots; reductions happen afterwards in index order, so
// numeric output is independent of the thread count.
template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t nthreads = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads - 1);
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto run_block = [&](std::size_t t) {
        const std::size_t lo = n * t / nthreads;
        const std::size_t hi = n * (t + 1) / nthreads;
        try {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!first_error) first_error = std::current_exception();
        }
    };
    for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(run_block, t);
    run_block(0);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cyclo

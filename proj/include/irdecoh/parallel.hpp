#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

// Deterministic data-parallel helper.  Callers fill per-index output slots
// and reduce sequentially afterwards, so results are bit-identical for any
// thread count.

namespace irdecoh {

namespace detail {
inline std::atomic<int>& thread_count_ref() {
    static std::atomic<int> n{1};
    return n;
}
}  // namespace detail

inline void set_thread_count(int n) { detail::thread_count_ref() = n < 1 ? 1 : n; }
inline int thread_count() { return detail::thread_count_ref(); }

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t nt = static_cast<std::size_t>(thread_count());
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t workers = std::min(nt, n);
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mx;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mx);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace irdecoh

#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace logsyn {

inline unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("LOGSYN_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
    }
    return hw;
}

// Runs fn(k) for k in [0, n) across the thread budget. Results must be written
// into pre-sized slots so the merge order stays deterministic. The first
// exception wins and is rethrown on the caller thread.
template <typename Fn>
void parallel_for(size_t n, Fn&& fn) {
    unsigned workers = std::min<size_t>(thread_budget(), n);
    if (workers <= 1) {
        for (size_t k = 0; k < n; ++k) fn(k);
        return;
    }
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                size_t k = next.fetch_add(1);
                if (k >= n) break;
                try {
                    fn(k);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace logsyn

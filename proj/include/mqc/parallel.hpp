#pragma once
#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace mqc {

inline int effective_jobs(int jobs) {
    if (jobs > 0) return jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Splits [0,n) into contiguous chunks, one worker per chunk. Workers must not
// touch shared mutable state; merge results after the join.
inline void parallel_for_chunks(std::int64_t n, int jobs,
                                const std::function<void(std::int64_t, std::int64_t, int)>& body) {
    int w = std::min<std::int64_t>(effective_jobs(jobs), std::max<std::int64_t>(n, 1));
    if (w <= 1 || n <= 1) {
        body(0, n, 0);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errs(w);
    std::int64_t chunk = (n + w - 1) / w;
    for (int t = 0; t < w; ++t) {
        std::int64_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, lo, hi, t] {
            try {
                body(lo, hi, t);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

} // namespace mqc

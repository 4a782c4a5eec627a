#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace wcm {

// Thread count used by the enumeration loops: explicit request, else the
// WCL_THREADS environment variable, else hardware concurrency.
inline int resolve_threads(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("WCL_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(part) for part = 0..n_parts-1 on a small worker pool and hands the
// results to combine(part, result) in ascending part order. The partition
// layout is independent of the thread count, so float reductions are
// bit-identical for any number of workers.
template <class R>
void partitioned_run(std::size_t n_parts, int threads,
                     const std::function<R(std::size_t)>& fn,
                     const std::function<void(std::size_t, R&)>& combine) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n_parts <= 1) {
        for (std::size_t i = 0; i < n_parts; ++i) {
            R r = fn(i);
            combine(i, r);
        }
        return;
    }
    std::vector<R> results(n_parts);
    std::vector<std::exception_ptr> errors(n_parts);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n_parts) break;
            try {
                results[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    int n = std::min<std::size_t>(threads, n_parts);
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < n_parts; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        combine(i, results[i]);
    }
}

} // namespace wcm

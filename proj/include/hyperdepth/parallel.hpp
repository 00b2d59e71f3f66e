#ifndef HYPERDEPTH_PARALLEL_HPP
#define HYPERDEPTH_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hyperdepth {

/// Computes out[i] = fn(i) for i in [0, n) on up to `threads` workers.
/// Results land in index order, so callers that reduce afterwards stay
/// deterministic regardless of scheduling.
template <typename R, typename Fn>
std::vector<R> parallelMap(std::size_t n, unsigned threads, Fn&& fn) {
    std::vector<R> out(n);
    threads = std::max(1u, threads);
    if (threads == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += threads) out[i] = fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace hyperdepth

#endif  // HYPERDEPTH_PARALLEL_HPP

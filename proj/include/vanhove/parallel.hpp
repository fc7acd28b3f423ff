#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vanhove {

// Worker count: hardware concurrency, capped by VANHOVE_THREADS when set.
int thread_count();

// Runs body(k) for k in [0, n) on up to thread_count() threads.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
    if (workers <= 1) {
        for (std::size_t k = 0; k < n; ++k) body(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto run = [&] {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= n) return;
            try {
                body(k);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

// Sum of term(k) over [0, n). Chunking is fixed and chunk partials are
// combined pairwise, so the result does not depend on the thread count.
template <class T, class Term>
T deterministic_sum(std::size_t n, Term&& term, const T& zero) {
    constexpr std::size_t chunk = 32;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    if (nchunks == 0) return zero;
    std::vector<T> part(nchunks, zero);
    parallel_for(nchunks, [&](std::size_t c) {
        T acc = zero;
        const std::size_t end = std::min(n, (c + 1) * chunk);
        for (std::size_t k = c * chunk; k < end; ++k) acc += term(k);
        part[c] = std::move(acc);
    });
    for (std::size_t stride = 1; stride < nchunks; stride *= 2)
        for (std::size_t i = 0; i + stride < nchunks; i += 2 * stride) part[i] += part[i + stride];
    return part[0];
}

}  // namespace vanhove

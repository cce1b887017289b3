#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "innerdist/core.hpp"

namespace innerdist {

inline unsigned worker_count() {
    if (const char* env = std::getenv("INNERDIST_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1u;
}

// Runs f(i) for i in [0, n). Iterations must not touch shared mutable state;
// results should be written to per-index slots so the outcome is order
// independent.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    std::size_t workers = std::min<std::size_t>(worker_count(), n ? n : 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr err;
    std::mutex err_mx;
    constexpr std::size_t chunk = 32;
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(chunk);
            if (i >= n || failed.load()) break;
            std::size_t end = std::min(n, i + chunk);
            try {
                for (; i < end; ++i) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mx);
                if (!err) err = std::current_exception();
                failed.store(true);
                break;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

// Identical output on every platform: mt19937_64 has a pinned algorithm and
// the shift-multiply below avoids the library-dependent distribution adaptors.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

}  // namespace innerdist

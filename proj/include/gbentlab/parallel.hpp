#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace gbentlab {

/// Thread budget handed down from the caller. Results never depend on it.
struct Exec {
    unsigned threads = 1;

    static Exec from_env() {
        Exec e;
        if (const char* s = std::getenv("GBENTLAB_THREADS")) {
            long v = std::strtol(s, nullptr, 10);
            if (v >= 1) e.threads = static_cast<unsigned>(v);
        }
        return e;
    }
};

/// Runs body(begin, end) over contiguous, disjoint chunks of [0, count).
/// Chunk boundaries depend only on `count` and the thread count, and each
/// output index is owned by exactly one chunk.
template <class Body>
void parallel_chunks(std::size_t count, const Exec& exec, Body&& body) {
    unsigned workers = std::max(1u, exec.threads);
    if (workers == 1 || count < 2 * workers) {
        body(std::size_t{0}, count);
        return;
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    std::size_t step = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * step;
        std::size_t hi = std::min(count, lo + step);
        if (lo >= hi) break;
        pool.emplace_back([&, w, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

template <class Body>
void parallel_for(std::size_t count, const Exec& exec, Body&& body) {
    parallel_chunks(count, exec, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) body(i);
    });
}

}  // namespace gbentlab

#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace flatconv {

/// Worker count: FLATCONV_THREADS if set and positive, otherwise (and for 0)
/// the hardware concurrency.
inline std::size_t worker_count() {
    if (const char* env = std::getenv("FLATCONV_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs body(i) for i in [0, count), striped over the workers.  Results must
/// be written by index; the caller merges them in order, so the outcome is
/// independent of scheduling.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    const std::size_t workers = std::min(worker_count(), count == 0 ? std::size_t{1} : count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace flatconv

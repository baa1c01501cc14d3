// parallel.hpp
// Block-parallel loops with a fixed block decomposition.
//
// Work is always cut into the same blocks regardless of how many threads
// run them, and callers reduce per-block results in block order. That makes
// every reduction bit-identical between 1 and N threads.

#pragma once
#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sqfvar {

// Name of the environment variable read by thread_count().
inline constexpr const char* kThreadsEnv = "SQFVAR_THREADS";

// Worker count: explicit override if set, else $SQFVAR_THREADS, else 1.
unsigned thread_count();
void set_thread_count(unsigned n);  // 0 clears the override

template <class Fn>
void parallel_blocks(std::size_t nblocks, Fn&& fn) {
    unsigned nthreads = std::min<std::size_t>(thread_count(), nblocks);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < nblocks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        try {
            for (std::size_t i = next++; i < nblocks; i = next++) fn(i);
        } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next = nblocks;
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace sqfvar

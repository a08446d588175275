// Deterministic parallel map: a fixed task list is executed by a worker pool
// and results are collected into a vector indexed by task.  Tasks derive
// their randomness from (seed, index), and the caller reduces results in
// index order, so output is identical for any worker count.

#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace symplab {

inline int effective_workers(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

template <class Result, class F>
std::vector<Result> parallel_map(std::size_t count, int workers, F&& task) {
    std::vector<Result> results(count);
    int nw = effective_workers(workers);
    if (nw <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = task(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                results[i] = task(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace symplab

#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace euler2d {

/// Global worker cap used by the realization loops (CLI --workers).
void set_worker_count(int workers);
int worker_count();

/// Runs fn(i) for i in [0, n); splits across workers when more than one is
/// configured. Work items must be independent.
inline void parallel_for(int n, const std::function<void(int)>& fn, int workers) {
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    const int used = std::min(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(used);
    for (int w = 0; w < used; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += used) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace euler2d

#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace cosserat {

/// Process-wide worker count for the parallel loops (default 1). Outputs
/// are written to disjoint ranges and chunks are concatenated in a fixed
/// order, so results are identical for any thread count.
int thread_count();
void set_thread_count(int n);

/// Run f(begin, end) over a partition of [0, n) on up to thread_count()
/// workers.
template <class F>
void parallel_chunks(int n, F&& f) {
  const int workers = std::max(1, std::min(thread_count(), n));
  if (workers == 1) {
    f(0, n);
    return;
  }
  const int chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const int b = w * chunk;
    const int e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&f, b, e] { f(b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace cosserat

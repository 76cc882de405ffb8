#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace maxrep {

inline int max_threads() {
  const char* env = std::getenv("MAXREP_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

// index-driven parallel loop; combined with order-independent reductions
// (min / max / integer sums) results do not depend on the thread count
template <typename F>
void parallel_for(long count, F&& body) {
  const long nthreads = std::min<long>(max_threads(), std::max<long>(1, count));
  if (nthreads <= 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<long> next{0};
  for (long t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      long i;
      while ((i = next.fetch_add(1)) < count) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace maxrep

#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qgraph {

inline int worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("QGRAPH_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
  }
  return static_cast<int>(n);
}

namespace detail {
inline thread_local bool inside_parallel_region = false;
}

// Static partition; body(i) must be independent across i.  Nested calls run
// sequentially instead of oversubscribing.
inline void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), std::max(1, count));
  if (workers <= 1 || count < 4 || detail::inside_parallel_region) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      detail::inside_parallel_region = true;
      for (int i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace qgraph

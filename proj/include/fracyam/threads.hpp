#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace fracyam {

/// Worker count: FRACYAM_THREADS overrides hardware_concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("FRACYAM_THREADS")) {
    const int k = std::atoi(env);
    if (k > 0) return k;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Deterministic parallel map over [0, count): results land in index order,
/// so reductions done afterwards are independent of thread scheduling.
inline void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace fracyam

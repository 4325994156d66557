#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace unicrit {

/// Static-partition parallel loop over [0, n). Each worker owns a contiguous
/// index range and must write only to slots derived from its index, so results
/// are identical for any thread count. threads <= 1 runs serially;
/// threads == 0 uses the hardware count.
template <class F>
void parallel_for(long n, int threads, F&& body) {
  if (n <= 0) return;
  if (threads == 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = static_cast<int>(std::min<long>(threads, n));
  if (threads <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const long chunk = (n + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const long lo = w * chunk;
    const long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (long i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

} // namespace unicrit

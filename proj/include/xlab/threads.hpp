#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace xlab {

// Worker cap: XLAB_THREADS if set, else hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("XLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(chunk_index, begin, end) over [0, total) split into contiguous
// chunks, one per worker. Callers must make per-chunk results independent of
// the split (derived seeds, commutative reductions).
inline void parallel_chunks(std::uint64_t total,
                            const std::function<void(int, std::uint64_t, std::uint64_t)>& body) {
  const int workers = static_cast<int>(
      std::min<std::uint64_t>(total, static_cast<std::uint64_t>(worker_count())));
  if (workers <= 1) {
    body(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (int t = 0; t < workers; ++t) {
    const std::uint64_t begin = t * chunk;
    const std::uint64_t end = std::min<std::uint64_t>(total, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, t, begin, end] { body(t, begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace xlab

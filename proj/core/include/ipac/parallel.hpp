#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace ipac {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Splits [0, total) into contiguous blocks, one per worker, and runs
// fn(block_index, begin, end) on each. Results must be merged by block
// index so the outcome never depends on scheduling.
inline void run_blocks(std::uint64_t total, int workers,
                       const std::function<void(int, std::uint64_t, std::uint64_t)>& fn) {
  workers = resolve_workers(workers);
  if (total == 0) return;
  if (static_cast<std::uint64_t>(workers) > total) workers = static_cast<int>(total);
  if (workers == 1) {
    fn(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t base = total / workers, extra = total % workers;
  std::uint64_t begin = 0;
  for (int b = 0; b < workers; ++b) {
    const std::uint64_t len = base + (static_cast<std::uint64_t>(b) < extra ? 1 : 0);
    pool.emplace_back(fn, b, begin, begin + len);
    begin += len;
  }
  for (auto& t : pool) t.join();
}

}  // namespace ipac

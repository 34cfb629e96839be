#pragma once

#include <thread>
#include <vector>

namespace nematic {

/// Runs fn(i) for i in [0, n) over a fixed-size pool. Work is assigned by
/// static striding so results written into index i of a caller-owned buffer
/// are identical for any thread count.
template <typename Fn>
void parallel_for(std::int64_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  int nt = std::min<std::int64_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (std::int64_t i = t; i < n; i += nt) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace nematic

#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace scatternet {

/// Runs fn(i) for i in [0, n) over contiguous blocks. Callers must make each
/// fn(i) independent of the others; results are then identical for any
/// worker count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t block = (n + workers - 1) / workers;
  std::vector<std::jthread> pool;
  for (std::size_t start = 0; start < n; start += block) {
    const std::size_t stop = std::min(n, start + block);
    pool.emplace_back([&fn, start, stop] {
      for (std::size_t i = start; i < stop; ++i) fn(i);
    });
  }
}

}  // namespace scatternet

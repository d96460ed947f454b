// parallel.hpp - deterministic fork/join over an index range.
//
// Work items are computed by any number of workers but consumed strictly in
// index order, so floating-point reductions give bit-identical results for
// every thread count.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

namespace vpm {

template <class R, class Fn, class Consume>
void parallel_map_ordered(std::uint64_t total, int threads, Fn&& fn,
                          Consume&& consume) {
  if (total == 0) return;
  threads = std::max(1, threads);
  if (threads == 1 || total == 1) {
    for (std::uint64_t i = 0; i < total; ++i) consume(i, fn(i));
    return;
  }

  const std::uint64_t block =
      std::min<std::uint64_t>(total, std::max<std::uint64_t>(1024, 256u * threads));
  std::vector<R> results(block);
  for (std::uint64_t base = 0; base < total; base += block) {
    const std::uint64_t count = std::min<std::uint64_t>(block, total - base);
    std::atomic<std::uint64_t> cursor{0};
    {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
          for (;;) {
            const std::uint64_t k = cursor.fetch_add(1, std::memory_order_relaxed);
            if (k >= count) break;
            results[k] = fn(base + k);
          }
        });
    }
    for (std::uint64_t k = 0; k < count; ++k) consume(base + k, std::move(results[k]));
  }
}

}  // namespace vpm

#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace hoax::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(begin, end) over contiguous chunks of [0, n). Chunks never share
/// an index, so callers that write only to their own indices stay
/// deterministic regardless of the thread count.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn,
                  std::size_t min_chunk = 4096) {
  threads = resolve_threads(threads);
  const std::size_t max_workers = std::max<std::size_t>(1, n / min_chunk);
  const std::size_t workers = std::min<std::size_t>(threads, max_workers);
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  const std::size_t step = (n + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = std::min(n, w * step);
    const std::size_t end = std::min(n, begin + step);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  fn(std::size_t{0}, std::min(n, step));
}

}  // namespace hoax::detail

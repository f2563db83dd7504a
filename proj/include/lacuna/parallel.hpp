#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace lacuna {

// Worker cap for data-parallel scans. Results must be identical for every
// thread count, so scans reduce per-chunk results in chunk order.
inline unsigned& worker_threads() {
  static unsigned n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

inline void set_worker_threads(unsigned n) { worker_threads() = std::max(1u, n); }

// Runs fn(chunk_index, begin, end) over a partition of [0, total) and returns
// per-chunk results in chunk order.
template <typename Result, typename Fn>
std::vector<Result> parallel_chunks(size_t total, Fn fn) {
  unsigned nthreads = worker_threads();
  size_t nchunks = std::min<size_t>(nthreads, total == 0 ? 1 : total);
  std::vector<Result> results(nchunks);
  if (nchunks <= 1) {
    results[0] = fn(size_t{0}, size_t{0}, total);
    return results;
  }
  std::vector<std::thread> threads;
  size_t per = (total + nchunks - 1) / nchunks;
  for (size_t c = 0; c < nchunks; ++c) {
    size_t begin = c * per, end = std::min(total, begin + per);
    threads.emplace_back(
        [&results, fn, c, begin, end] { results[c] = fn(c, begin, end); });
  }
  for (auto& t : threads) t.join();
  return results;
}

}  // namespace lacuna

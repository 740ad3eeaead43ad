#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace zetashift {

// Worker count: explicit argument > ZETASHIFT_THREADS > hardware concurrency.
inline int default_thread_count() {
  if (const char* env = std::getenv("ZETASHIFT_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Runs fn(chunk_index) for chunk_index in [0, chunks). Chunks are claimed via
// an atomic counter and each chunk writes only its own slice of the output,
// so results are independent of the worker count and of scheduling.
inline void parallel_for_chunks(std::size_t chunks, int threads,
                                const std::function<void(std::size_t)>& fn) {
  if (threads <= 0) threads = default_thread_count();
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), chunks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < chunks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= chunks) break;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace zetashift

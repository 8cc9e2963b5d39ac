#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gbk::detail {

// Splits [0, total) into `chunks` contiguous ranges and runs body(chunk, lo, hi)
// on up to `jobs` threads. Each chunk is processed by exactly one call, so
// per-chunk results can be reduced in chunk order afterwards.
inline void parallel_chunks(std::uint64_t total, std::size_t chunks, int jobs,
                            const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& body) {
  if (chunks == 0) return;
  auto bounds = [&](std::size_t k) { return total / chunks * k + std::min<std::uint64_t>(k, total % chunks); };
  const std::size_t workers = std::min<std::size_t>(chunks, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < chunks; ++k) body(k, bounds(k), bounds(k + 1));
    return;
  }
  std::mutex mutex;
  std::size_t next = 0;
  std::exception_ptr failure;
  auto run = [&] {
    for (;;) {
      std::size_t k;
      {
        std::lock_guard lock(mutex);
        if (next >= chunks || failure) return;
        k = next++;
      }
      try {
        body(k, bounds(k), bounds(k + 1));
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

inline int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace gbk::detail

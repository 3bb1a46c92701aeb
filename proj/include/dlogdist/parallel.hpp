#pragma once

#include <functional>
#include <thread>
#include <vector>

#include "dlogdist/common.hpp"

namespace dlogdist {

// Splits [0, n) into contiguous chunks, one per worker. Workers write to
// disjoint slots chosen by index, so results do not depend on the job count.
// The worker id passed to the body is always < max(1, jobs).
inline void parallel_for_indexed(
    int jobs, u64 n, const std::function<void(u64 worker, u64 begin, u64 end)>& body) {
  if (n == 0) return;
  u64 workers = jobs > 1 ? static_cast<u64>(jobs) : 1;
  if (workers > n) workers = n;
  if (workers == 1) {
    body(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  u64 chunk = n / workers;
  u64 extra = n % workers;
  u64 begin = 0;
  for (u64 w = 0; w < workers; ++w) {
    u64 len = chunk + (w < extra ? 1 : 0);
    u64 end = begin + len;
    pool.emplace_back(body, w, begin, end);
    begin = end;
  }
  for (auto& t : pool) t.join();
}

inline void parallel_for(int jobs, u64 n,
                         const std::function<void(u64 begin, u64 end)>& body) {
  parallel_for_indexed(jobs, n,
                       [&](u64, u64 begin, u64 end) { body(begin, end); });
}

}  // namespace dlogdist

#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qsim {

// Worker count: explicit request, else QSIM_THREADS, else hardware.
inline int resolve_threads(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QSIM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Static block partition of [0,n): body(thread_index, begin, end). Results
// must be combined in a thread-count-independent way by the caller (integer
// counts indexed by trial do this naturally).
template <class Body>
void parallel_blocks(long n, int threads, Body&& body) {
  threads = static_cast<int>(std::max<long>(1, std::min<long>(threads, n)));
  if (threads == 1) {
    body(0, 0L, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const long chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long begin = t * chunk;
    const long end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, t, begin, end] { body(t, begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace qsim

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qsim {

using Rng = std::mt19937_64;

// SplitMix64 step; used only to spread seed material, never as a run RNG.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Well-separated 64-bit seed for stream `counter` under a master seed.
// Counter-based so trial streams stay fixed when the trial count changes.
inline uint64_t derive_seed(uint64_t master, uint64_t counter) {
  uint64_t s = master ^ (0xd1342543de82ef95ull * (counter + 1));
  (void)splitmix64(s);
  return splitmix64(s);
}

inline Rng make_stream(uint64_t master, uint64_t counter) {
  return Rng(derive_seed(master, counter));
}

// Uniform double in [0,1) from 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0,n). Multiply-shift; bias is O(n/2^64).
inline uint32_t bounded(Rng& rng, uint32_t n) {
  return static_cast<uint32_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

// Visits each of n Bernoulli(p) slots in order, calling fn(index) on hits.
// Geometric jumps keep the cost proportional to the number of hits.
template <class Fn>
void for_each_hit(int64_t n, double p, Rng& rng, Fn&& fn) {
  if (n <= 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const double inv_log1m = 1.0 / std::log1p(-p);
  int64_t i = 0;
  while (i < n) {
    const double u = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // (0,1]
    const double jump = std::floor(std::log(u) * inv_log1m);
    if (jump >= static_cast<double>(n - i)) return;
    i += static_cast<int64_t>(jump);
    if (i >= n) return;
    fn(i);
    ++i;
  }
}

}  // namespace qsim

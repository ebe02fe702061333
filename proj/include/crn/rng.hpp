// rng.hpp — deterministic random number generation and stable hashing.
//
// The simulator's reproducibility contract (same seed => bit-identical
// results) must not depend on the standard library's unspecified
// distribution algorithms, so the generator and all draws are implemented
// here. The core generator is splitmix64.

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace crn {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, bound), unbiased via rejection.
  int next_int(int bound) {
    assert(bound > 0);
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return static_cast<int>(r % b);
  }

  bool bernoulli(double p) { return next_double() < p; }

  // k distinct values from [0, n), in sorted order.
  std::vector<int> sample_without_replacement(int n, int k) {
    assert(0 <= k && k <= n);
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
      const int j = i + next_int(n - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

 private:
  std::uint64_t state_;
};

// FNV-1a, stable across platforms and builds. Used to derive per-instance
// seeds so that adding labels or points to a plan never shifts the random
// streams of existing rows.
inline std::uint64_t stable_hash64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x00000100000001B3ULL;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view label,
                                 long link_count, long instance,
                                 std::string_view salt = "") {
  std::string key;
  key.reserve(label.size() + salt.size() + 48);
  key.append(label);
  key.push_back('|');
  key.append(std::to_string(link_count));
  key.push_back('|');
  key.append(std::to_string(instance));
  key.push_back('|');
  key.append(salt);
  return base_seed ^ stable_hash64(key);
}

}  // namespace crn

#pragma once

#include <cstdint>

#include "arrfaces/scalar.hpp"

namespace arrfaces {

// Deterministic splitmix64 stream; identical output on every platform.
// Component streams derive from a master seed so randomized constructions
// (cutting retries, partition trees) are reproducible per CLI seed.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), unbiased
  uint64_t below(uint64_t n) {
    const uint64_t limit = ~uint64_t(0) - (~uint64_t(0) % n);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  int64_t range(int64_t lo, int64_t hi) {  // inclusive
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  Rng fork(uint64_t stream) const { return Rng(hash_uint64(state_ ^ hash_uint64(stream))); }

 private:
  uint64_t state_;
};

}  // namespace arrfaces

#pragma once

#include <cstdint>

namespace tameblocks {

/// Deterministic splitmix64 stream. All randomized routines take an explicit
/// seed so identical inputs give identical outputs on every platform.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-enough draw in [0, n). n must be positive.
  uint64_t below(uint64_t n) { return next() % n; }

  bool flip() { return next() & 1; }

  /// Derived independent stream; used to retry with fresh but reproducible seeds.
  Rng fork(uint64_t salt) {
    Rng r(state_ ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
    r.next();
    return r;
  }

private:
  uint64_t state_;
};

}  // namespace tameblocks

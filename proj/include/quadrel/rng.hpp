#pragma once

#include <cstdint>

namespace quadrel {

/// splitmix64 stream. Used instead of <random> engines/distributions so
/// seeded sweeps produce identical artifacts on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  bool coin() { return next() & 1; }

 private:
  std::uint64_t state_;
};

}  // namespace quadrel

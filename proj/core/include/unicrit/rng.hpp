#pragma once

#include <cstdint>

namespace unicrit {

// Counter-based splitmix64. The n-th draw for a seed is a pure function of
// (seed, n), so batches can be generated in any order or in parallel and
// different implementations can reproduce the same streams. The exact
// recipe (documented in the README):
//
//   x = seed + (n + 1) * 0x9E3779B97F4A7C15
//   x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9
//   x = (x ^ (x >> 27)) * 0x94D049BB133111EB
//   out = x ^ (x >> 31)
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t n) {
  std::uint64_t x = seed + (n + 1) * 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Sequential convenience wrapper around splitmix64_at.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next() { return splitmix64_at(seed_, n_++); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

private:
  std::uint64_t seed_;
  std::uint64_t n_ = 0;
};

} // namespace unicrit

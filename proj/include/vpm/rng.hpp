// rng.hpp - counter-based deterministic randomness.
//
// Every random quantity in the library is a pure function of a 64-bit seed
// and a stream/index path, so results are bit-identical across runs and
// across degrees of parallelism. No global state, no ambient entropy.
#pragma once

#include <cstdint>

namespace vpm {

// splitmix64 finalizer (Vigna). Good avalanche, cheap, stateless.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derive an independent child seed from (seed, index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index));
}

// Named streams keep unrelated consumers of the same user seed decorrelated.
inline constexpr std::uint64_t kStreamProfile = 0x70726f66696c6531ULL;
inline constexpr std::uint64_t kStreamOrder = 0x6f726465722d3031ULL;
inline constexpr std::uint64_t kStreamGenerator = 0x67656e2d72616e64ULL;

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index) {
  return derive_seed(derive_seed(seed, stream), index);
}

// Uniform double in [0, 1) from a single 64-bit word (53 mantissa bits).
constexpr double to_unit(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

// Tiny sequential generator for code that wants a stream of words.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return mix64(state_++); }
  double next_unit() { return to_unit(next()); }

  // Unbiased integer in [0, bound) via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = -bound % bound;
    for (;;) {
      const std::uint64_t word = next();
      if (word >= threshold) return word % bound;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace vpm

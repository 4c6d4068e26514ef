#pragma once

#include <cstdint>

namespace kzfront {

/// SplitMix64 finalizer (Vigna / Steele et al.). Bijective on uint64.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// SplitMix64 stream generator. Every disorder realization owns one stream,
/// so draws are independent of the order in which realizations are processed.
class SplitMix64 {
 public:
  constexpr explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Seed of ensemble member `index` under `base_seed`. Fixed and documented:
///   mix64(base_seed ^ mix64(0x9E3779B97F4A7C15 * (index + 1)))
/// Injective in `index` for a fixed base seed (odd multiplier, bijective mix).
constexpr std::uint64_t realization_seed(std::uint64_t base_seed, std::uint64_t index) {
  return mix64(base_seed ^ mix64(0x9E3779B97F4A7C15ull * (index + 1)));
}

}  // namespace kzfront

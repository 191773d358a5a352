#pragma once

#include <cstdint>

namespace dsuq::rng {

// SplitMix64 finalizer (Steele, Lea & Flood 2014). Used as a counter-based
// generator: every (seed, sample, slot) triple yields one decorrelated 64-bit
// word, so draws depend only on their indices, never on evaluation order.
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t sample,
                                  std::uint64_t slot) noexcept {
  return mix(mix(mix(seed) ^ sample) ^ slot);
}

// [0, 1), 53 significant bits.
constexpr double uniform01(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

constexpr double uniform01(std::uint64_t seed, std::uint64_t sample,
                           std::uint64_t slot) noexcept {
  return uniform01(substream(seed, sample, slot));
}

}  // namespace dsuq::rng

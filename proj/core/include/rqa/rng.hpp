#pragma once

#include <cstdint>

namespace rqa {

// SplitMix64 (Steele, Lea & Flood; reference code by S. Vigna). The i-th
// output (0-based) of the stream with seed s is mix(s + (i + 1) * gamma), so
// any position of a stream can be reached in O(1); disjoint counter ranges
// give the substreams used by parallel workers.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed, std::uint64_t position = 0)
      : state_(seed + position * kGamma) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform on the open interval (0, 1), 53-bit resolution.
  constexpr double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  // Standard normal deviate by inversion of a single uniform draw.
  double normal();

 private:
  std::uint64_t state_;
};

// Seed of substream `index` of `seed`; used for per-replication and per-path streams.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64::mix(SplitMix64::mix(seed ^ 0x6a09e667f3bcc909ULL) +
                         (index + 1) * 0xd1b54a32d192ed03ULL);
}

}  // namespace rqa

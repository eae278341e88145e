#pragma once

#include <cstdint>
#include <vector>

namespace framelab {

/// Counter-based 64-bit generator (splitmix64). Output i is a bijective
/// hash of seed + (i+1)*gamma, so any position in the stream can be
/// evaluated independently of the others; the same seed always yields the
/// same stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Random access: the index-th output of the stream seeded with `seed`.
  static std::uint64_t at(std::uint64_t seed, std::uint64_t index) {
    return mix(seed + (index + 1) * kGamma);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

/// Decorrelated seed for a tagged substream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return SplitMix64::mix(seed ^ SplitMix64::mix(tag + 0x632be59bd9b4e019ULL));
}

/// `count` raw generator bits, 64 per draw, LSB first within each word.
inline std::vector<std::uint8_t> prng_bits(std::size_t count, std::uint64_t seed) {
  std::vector<std::uint8_t> bits;
  bits.reserve(count);
  SplitMix64 rng(seed);
  while (bits.size() < count) {
    std::uint64_t w = rng.next();
    for (int j = 0; j < 64 && bits.size() < count; ++j)
      bits.push_back(static_cast<std::uint8_t>((w >> j) & 1u));
  }
  return bits;
}

}  // namespace framelab

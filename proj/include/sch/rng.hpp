#pragma once

#include <cstdint>

namespace sch {

// splitmix64: tiny fully-specified generator. Every language can reproduce
// the stream from the seed, which is why artifacts name it in their manifest.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1), 53-bit mantissa
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [-1,1)
  double next_symmetric() { return 2.0 * next_double() - 1.0; }

  // independent child stream; mixing the index through one splitmix step
  // keeps streams reproducible across languages
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t stream_id) {
    SplitMix64 mixer(seed ^ (0xA5A5A5A55A5A5A5AULL + stream_id));
    return SplitMix64(mixer.next_u64());
  }

  static constexpr const char* name() { return "splitmix64"; }

 private:
  std::uint64_t state_;
};

} // namespace sch

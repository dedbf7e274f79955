#pragma once

#include <cstdint>

namespace vbe {

// Counter-based generator: output k of stream s under seed is a SplitMix64
// finalizer applied to a hash of (seed, s, k). Streams are independent of the
// order in which they are consumed, so restarts can run in any order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(mix(seed) ^ (stream * kGolden + kStreamSalt))) {}

  std::uint64_t next() { return mix(key_ + kGolden * ++counter_); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kStreamSalt = 0x632be59bd9b4e019ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Stream identifiers used across the library.
namespace streams {
inline constexpr std::uint64_t kRestart = 0x1000;
inline constexpr std::uint64_t kSequence = 0x2000;
inline constexpr std::uint64_t kTarget = 0x3000;
}  // namespace streams

}  // namespace vbe

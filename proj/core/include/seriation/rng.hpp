#pragma once

#include <cstdint>
#include <vector>

namespace seriation::rng {

// Counter-based generator built on the SplitMix64 output function
// (Steele, Lea & Flood 2014). Stream value k of stream `seed` is
// finalize(seed + (k+1)*GAMMA), which is exactly the k-th output of a
// SplitMix64 engine seeded with `seed`. Everything downstream addresses
// coins by (seed, counter), so results are platform-stable.

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
  return finalize(seed + (counter + 1) * kGamma);
}

// Uniform double in [0,1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(at(seed, counter) >> 11) * 0x1.0p-53;
}

// Derives an independent stream from a parent seed and a tag. Chain calls
// to mix in several tags.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
  return finalize(seed ^ finalize(tag + kGamma));
}

// Stateful view over one stream; used where a sequence is more natural
// than explicit counters.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next() { return at(seed_, counter_++); }
  double next_uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = bound == 0 ? 0 : (0 - bound) % bound;
    for (;;) {
      const std::uint64_t v = next();
      if (v >= threshold) return v % bound;
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Deterministic Fisher-Yates; does not depend on std::shuffle's
// implementation-defined draw order.
template <typename T>
void shuffle(std::vector<T>& items, std::uint64_t seed) {
  Stream stream(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(stream.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace seriation::rng

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace matchstream {

// SplitMix64. All seeded randomness in the library goes through this generator so that
// runs are reproducible bit-for-bit across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection of the biased low range.
  std::uint64_t uniform(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Top bit of one draw.
  bool coin() { return (next() >> 63) != 0; }

  // Uniform in [0, 1) from the top 53 bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Stateless mix of a value into a seed (one SplitMix64 step on seed ^ value).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t value) {
  return SplitMix64(seed ^ (value * 0xD1B54A32D192ED03ULL)).next();
}

// Fisher-Yates, swapping position i with uniform(i + 1) for i = size-1 down to 1.
template <class T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.uniform(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace matchstream

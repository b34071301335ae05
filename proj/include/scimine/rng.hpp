#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace scimine {

/// SplitMix64 (Steele, Lea & Flood). state += 0x9e3779b97f4a7c15, then
/// z = (z ^ z>>30) * 0xbf58476d1ce4e5b9, z = (z ^ z>>27) * 0x94d049bb133111eb,
/// z ^ z>>31. The same seed gives the same stream everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n) by rejection; n must be positive.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("below(0)");
    const std::uint64_t limit = -n % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next();
      if (r >= limit) return r % n;
    }
  }

 private:
  std::uint64_t state_;
};

/// Fisher-Yates, drawing j = below(i + 1) for i = n-1 down to 1.
template <typename T>
void seeded_shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace scimine

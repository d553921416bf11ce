#pragma once

#include <cstdint>

namespace jckerr {

/// SplitMix64 (Steele, Lea & Flood). Fixed algorithm so seeded runs are
/// reproducible on every platform:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// uniform() takes the top 53 bits: (next() >> 11) * 2^-53, in [0, 1).
class SplitMix64 {
public:
  static constexpr std::uint64_t kDefaultSeed = 0x4A434B45525231ULL;

  explicit constexpr SplitMix64(std::uint64_t seed = kDefaultSeed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Integer in [lo, hi].
  constexpr int uniform_int(int lo, int hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

private:
  std::uint64_t state_;
};

}  // namespace jckerr

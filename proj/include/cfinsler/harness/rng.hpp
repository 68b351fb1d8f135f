#pragma once

// SplitMix64 (Steele, Lea, Flood 2014) with one independent stream per
// sample index. The whole sampling path uses only integer arithmetic, IEEE
// double operations and std::sqrt/log/cos/sin, so a seed reproduces the same
// sample set in any language that implements these few lines.
//
//   stream(seed, i).state = seed + (i + 1) * 0x9E3779B97F4A7C15
//   next():  state += 0x9E3779B97F4A7C15; z = state;
//            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//            z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//            return z ^ (z >> 31)
//   uniform(): (next() >> 11) * 2^-53            in [0, 1)
//   normal():  Box-Muller, sqrt(-2 ln(1 - u1)) cos(2 pi u2)

#include <cmath>
#include <cstdint>
#include <numbers>

namespace cfinsler {

class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(seed + (index + 1) * kGamma);
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += kGamma);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace cfinsler

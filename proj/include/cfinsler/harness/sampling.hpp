#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cfinsler/harness/rng.hpp"
#include "cfinsler/tensors.hpp"

namespace cfinsler {

struct Interval {
  double lo = 0, hi = 0;
};

struct SampleSpec {
  int n = 2;
  int count = 200;
  std::uint64_t seed = 42;
  Interval t_range{0.2, 2.0};
  Interval s_fraction_range{0.05, 0.95};

  /// ConfigError when ranges are empty or violate the profile's domain.
  void validate(const ProfileDescriptor& profile) const;
};

/// Default t-range for a profile: inside (0, c) for the k = -4 model.
Interval default_t_range(const ProfileDescriptor& profile);

struct IndexedSample {
  int index;
  PointVector pv;
};

struct Rejection {
  int index;
  std::string reason;
};

struct SampleSet {
  std::vector<IndexedSample> samples;
  std::vector<Rejection> rejections;
};

/// One draw per sample index from its own SplitMix64 stream: |z|^2 uniform in
/// t_range with uniform direction, v of norm in [0.5, 2] with s/t uniform in
/// s_fraction_range. Draws outside the profile validity or the interior band
/// are rejected (never clamped). EmptyAfterRejection when > 90% are rejected.
SampleSet sample_domain(const SampleSpec& spec, const MetricProfile& profile);

/// Haar-like unitary matrix from the QR factorization of a Gaussian matrix.
cmat random_unitary(int n, SplitMix64& rng);

}  // namespace cfinsler

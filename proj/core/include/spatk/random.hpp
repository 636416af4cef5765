#pragma once

#include <cstdint>
#include <vector>

#include "spatk/point_pattern.hpp"

namespace spatk {

/// SplitMix64. Self-contained so sampled values are bit-stable across
/// platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(next_double() * static_cast<double>(n));
  }

  /// Standard normal via Box-Muller.
  double next_gaussian();

  /// Derives an independent stream for (seed, index) pairs, e.g. one per
  /// CSR simulation, without correlating consecutive streams.
  static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Samples per_class_counts[c] points uniformly in the window for each
/// class c (a binomial point process, i.e. CSR conditioned on counts).
PointPattern simulate_uniform_pattern(const Window& window,
                                      const std::vector<std::size_t>& per_class_counts,
                                      std::uint64_t seed);

}  // namespace spatk

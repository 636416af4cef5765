#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spatk/point_pattern.hpp"
#include "spatk/radii.hpp"

namespace spatk {

enum class Correction {
  kNone,
  /// Drop sources closer than r to the window boundary; renormalize by the
  /// retained source count at each r.
  kBorder,
};

Correction correction_from_string(const std::string& name);
const char* to_string(Correction c);

/// A population K (or K-cross) curve sampled on a radii grid.
struct KCurve {
  RadiiGrid radii;
  std::vector<double> values;
  int source_class = 0;
  int target_class = 0;
};

/// Pointwise rank envelope from CSR simulations, plus the theoretical
/// pi*r^2 baseline.
struct Envelope {
  RadiiGrid radii;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> baseline;
  std::size_t n_simulations = 0;
  std::size_t rank = 0;
};

/// Ripley K / K-cross estimator:
///
///   K(r) = Area / (n_src * (n_tgt - [src == tgt])) * sum_s sum_{t != s} [d(s,t) < r]
///
/// The distance comparison is strict. Under CSR the expectation is pi*r^2.
/// Border correction restricts the outer sum to sources at least r from
/// the boundary and replaces n_src by their count (0 retained -> value 0).
KCurve ripley_k(const PointPattern& pattern, int source_class, int target_class,
                const RadiiGrid& radii, Correction correction = Correction::kNone);

/// Rank envelope from n_sims CSR simulations in the same window with the
/// same per-class counts. lower/upper are the rank-th smallest/largest
/// simulated K values at each radius. Requires n_sims >= 2*rank - 1.
/// Per-simulation seeds derive deterministically from `seed`; results do
/// not depend on `workers`.
Envelope csr_envelope(const PointPattern& pattern, int source_class, int target_class,
                      const RadiiGrid& radii, std::size_t n_sims, std::size_t rank,
                      std::uint64_t seed, Correction correction = Correction::kNone,
                      int workers = 1);

}  // namespace spatk

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spatk/point_pattern.hpp"
#include "spatk/radii.hpp"

namespace spatk {

/// Per-cell spatial context: for each class, the cumulative neighbor count
/// within each sampling radius, restricted to a square patch centered on
/// the cell and normalized by the constant n_max. 18 values for 3 classes
/// on the default 6-radius grid.
struct KVector {
  std::size_t cell_index = 0;
  RadiiGrid radii;
  int n_classes = 0;
  double n_max = 0.0;
  /// Class-major, n_classes * radii.size() entries: class c's curve
  /// occupies [c * radii.size(), (c + 1) * radii.size()).
  std::vector<double> values;

  std::span<const double> row(int cls) const {
    return {values.data() + static_cast<std::size_t>(cls) * radii.size(), radii.size()};
  }
  double at(int cls, std::size_t r) const {
    return values[static_cast<std::size_t>(cls) * radii.size() + r];
  }
};

/// Class-pair matrix of average K-vector rows. means is
/// n_classes * n_classes * radii.size(), indexed (source, target, radius).
/// Source classes with no cells keep an all-zero row and present=false.
struct AverageKCurves {
  RadiiGrid radii;
  int n_classes = 0;
  std::vector<double> means;
  std::vector<bool> present;

  std::span<const double> row(int source_class, int target_class) const {
    const std::size_t n_r = radii.size();
    return {means.data() +
                (static_cast<std::size_t>(source_class) * static_cast<std::size_t>(n_classes) +
                 static_cast<std::size_t>(target_class)) *
                    n_r,
            n_r};
  }
};

/// K-vector of one cell. The patch is the closed axis-aligned square of
/// side patch_size centered on the cell, clipped at the window (no edge
/// correction); the source cell is always excluded; distances compare
/// strictly. Entries are integer counts scaled by 1/n_max.
KVector cell_k_vector(const PointPattern& pattern, std::size_t cell_index,
                      const RadiiGrid& radii, double patch_size, double n_max);

/// cell_k_vector for every cell, in point order. Bit-identical to the
/// per-cell op for any worker count.
std::vector<KVector> k_vector_field(const PointPattern& pattern, const RadiiGrid& radii,
                                    double patch_size, double n_max, int workers = 1);

/// Per-class Euclidean distance to the nearest neighbor inside the patch,
/// excluding the cell itself. Classes absent from the patch get the
/// sentinel patch_size * sqrt(2).
std::vector<double> nn_distance_vector(const PointPattern& pattern, std::size_t cell_index,
                                       double patch_size);

/// Per-class point count inside the patch (excluding the cell), / n_max.
std::vector<double> density_vector(const PointPattern& pattern, std::size_t cell_index,
                                   double patch_size, double n_max);

/// Data-derived Eq-style normalizer: the largest number of points (the
/// center included) found in any cell's patch. The toolkit default is the
/// constant 100, not this.
std::size_t max_patch_count(const PointPattern& pattern, double patch_size);

/// Mean K-vector rows per (source class, target class) pair, averaged over
/// the source class's cells in point order.
AverageKCurves average_k_curves(const PointPattern& pattern, const RadiiGrid& radii,
                                double patch_size, double n_max, int workers = 1);

}  // namespace spatk

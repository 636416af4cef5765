#pragma once

#include <cstdint>
#include <vector>

#include "spatk/k_function.hpp"
#include "spatk/k_vector.hpp"
#include "spatk/point_pattern.hpp"
#include "spatk/raster.hpp"

// Independent reference implementations the library is checked against.
// These deliberately avoid the library's index/search-order tricks: plain
// scans, per-radius recounts, union-find labeling, augmenting-path
// matching.
namespace spatk::testing {

std::size_t brute_count_in_disk(const PointPattern& pattern, Point center, double radius,
                                int target_class, std::ptrdiff_t exclude = -1);

KVector brute_cell_k_vector(const PointPattern& pattern, std::size_t cell,
                            const RadiiGrid& radii, double patch_size, double n_max);

KCurve brute_ripley_k(const PointPattern& pattern, int source_class, int target_class,
                      const RadiiGrid& radii, Correction correction);

double naive_dice_loss(const RasterMap& pred, const RasterMap& gt, double smooth);

struct UnionFindLabeling {
  std::size_t n_components = 0;
  std::vector<std::size_t> sizes;            // per component, in label order
  std::vector<std::int32_t> component_of;    // per pixel, -1 background
};

/// 8-connected labeling via union-find (two-pass), labels in row-major
/// first-encounter order like the library's.
UnionFindLabeling union_find_components(const RasterMap& mask);

/// Maximum-cardinality one-to-one matching between points within `radius`,
/// via augmenting paths. Optimal; used to grade the greedy matcher.
std::size_t optimal_matching_size(const std::vector<Point>& pred,
                                  const std::vector<Point>& gt, double radius);

}  // namespace spatk::testing

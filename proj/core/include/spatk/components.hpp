#pragma once

#include <vector>

#include "spatk/point_pattern.hpp"
#include "spatk/raster.hpp"

namespace spatk {

/// 8-connected components of a binary mask. Labels are consecutive
/// 1..n_components in row-major first-encounter order; 0 is background.
struct ComponentLabeling {
  RasterMap label_map;  // 1 channel, f32 holding integer labels
  std::size_t n_components = 0;
  std::vector<Point> centroids;  // (x=column, y=row) pixel means
  std::vector<std::size_t> sizes;

  std::size_t label_at(std::uint32_t y, std::uint32_t x) const {
    return static_cast<std::size_t>(label_map.f32(y, x));
  }
};

/// Labels the nonzero pixels of a single-channel mask (u8 or f32).
ComponentLabeling label_components(const RasterMap& mask);

}  // namespace spatk

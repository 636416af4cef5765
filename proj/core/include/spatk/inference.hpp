#pragma once

#include <vector>

#include "spatk/point_pattern.hpp"
#include "spatk/raster.hpp"

namespace spatk {

/// A detected cell: the centroid of a thresholded likelihood component,
/// its argmax class at that location, and the component's pixel count.
struct Prediction {
  Point point;
  int class_label = 0;
  std::size_t size = 0;
};

/// Binarizes the likelihood at >= threshold, drops components smaller than
/// min_size pixels, and reads each survivor's class as the argmax over the
/// class channels at its centroid (rounded half-up to a pixel). Points are
/// in raster coordinates.
std::vector<Prediction> extract_cells(const RasterMap& likelihood, const RasterMap& class_map,
                                      double threshold = 0.5, std::size_t min_size = 5);

}  // namespace spatk

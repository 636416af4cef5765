#pragma once

#include <cstdint>
#include <vector>

#include "spatk/k_vector.hpp"
#include "spatk/point_pattern.hpp"
#include "spatk/raster.hpp"

namespace spatk {

/// Where an annotation landed on the raster and how far it was dilated.
struct DilationEntry {
  std::size_t cell_index = 0;
  std::int64_t px = 0;
  std::int64_t py = 0;
  int halfwidth = 0;  // square spans [p - h, p + h] on both axes
};

struct DetectionMask {
  RasterMap mask;  // u8 binary, 1 channel
  std::vector<DilationEntry> report;
};

struct KVectorMap {
  RasterMap values;    // f32, n_classes * radii channels
  RasterMap validity;  // u8, 1 channel; 1 marks positive pixels
};

/// Rasterizes each annotation as a filled square whose half-width shrinks
/// near other annotations so that components stay pairwise disjoint and
/// separated by at least min_gap empty pixels:
///
///   h_i = clamp(min(max_halfwidth, floor((d_i - min_gap - 1) / 2)), 0, max_halfwidth)
///
/// with d_i the Chebyshev pixel distance to the nearest other annotation.
/// Annotations on the same pixel, or closer than min_gap + 1 pixels, throw
/// CoincidentPointsError: their components cannot be kept apart.
DetectionMask generate_detection_mask(const PointPattern& pattern, int max_halfwidth = 4,
                                      int min_gap = 1);

/// One binary channel per class: the union of detection-mask components
/// whose generating annotation carries that class. Channels are pixelwise
/// disjoint and their union equals the detection mask. The mask must come
/// from this pattern (one component per annotation) or InconsistentInput
/// is thrown.
RasterMap generate_class_masks(const PointPattern& pattern, const RasterMap& detection_mask);

struct ComponentLabeling;  // components.hpp

/// Component label owned by each annotation, 1-based into `labeling`.
/// Throws InconsistentInput unless mask components and annotations are in
/// bijection (every annotation on its own component).
std::vector<std::size_t> map_annotations_to_components(const PointPattern& pattern,
                                                       const RasterMap& detection_mask,
                                                       const ComponentLabeling& labeling);

/// Every pixel of annotation i's component carries cell i's K-vector;
/// background stays zero. The validity channel marks positive pixels so a
/// trainer can restrict its loss to them.
KVectorMap generate_kvector_map(const PointPattern& pattern, const RasterMap& detection_mask,
                                const std::vector<KVector>& k_vectors);

}  // namespace spatk

#include "spatk/groundtruth.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "spatk/components.hpp"
#include "spatk/errors.hpp"

namespace spatk {

namespace {

std::int64_t pixel_of(double v) { return static_cast<std::int64_t>(std::floor(v + 0.5)); }

std::uint32_t raster_extent(double length) {
  const auto n = static_cast<std::int64_t>(std::llround(length));
  if (n < 1) {
    throw InvalidArgument("window too small to rasterize");
  }
  return static_cast<std::uint32_t>(n);
}

struct PixelPos {
  std::int64_t x;
  std::int64_t y;
};

std::vector<PixelPos> annotation_pixels(const PointPattern& pattern, std::uint32_t w,
                                        std::uint32_t h) {
  std::vector<PixelPos> px(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    px[i].x = std::clamp<std::int64_t>(pixel_of(pattern.x(i) - pattern.window().x0), 0,
                                       static_cast<std::int64_t>(w) - 1);
    px[i].y = std::clamp<std::int64_t>(pixel_of(pattern.y(i) - pattern.window().y0), 0,
                                       static_cast<std::int64_t>(h) - 1);
  }
  return px;
}

}  // namespace

// Maps each annotation to its detection-mask component and checks the
// component<->annotation bijection the downstream ops rely on.
std::vector<std::size_t> map_annotations_to_components(const PointPattern& pattern,
                                                       const RasterMap& detection_mask,
                                                       const ComponentLabeling& labeling) {
  if (detection_mask.channels() != 1) {
    throw InconsistentInput("detection mask must have a single channel");
  }
  if (labeling.n_components != pattern.size()) {
    throw InconsistentInput("detection mask has " + std::to_string(labeling.n_components) +
                            " components for " + std::to_string(pattern.size()) +
                            " annotations");
  }
  const auto px = annotation_pixels(pattern, detection_mask.width(), detection_mask.height());
  std::vector<std::size_t> comp(pattern.size(), 0);
  std::vector<bool> used(pattern.size() + 1, false);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const std::size_t label = labeling.label_at(static_cast<std::uint32_t>(px[i].y),
                                                static_cast<std::uint32_t>(px[i].x));
    if (label == 0) {
      throw InconsistentInput("annotation " + std::to_string(i) +
                              " does not lie on a mask component");
    }
    if (used[label]) {
      throw InconsistentInput("two annotations share one mask component");
    }
    used[label] = true;
    comp[i] = label;
  }
  return comp;
}

DetectionMask generate_detection_mask(const PointPattern& pattern, int max_halfwidth,
                                      int min_gap) {
  if (pattern.empty()) {
    throw EmptyPatternError("cannot build a detection mask from an empty pattern");
  }
  if (max_halfwidth < 1) {
    throw InvalidArgument("max_halfwidth must be >= 1");
  }
  if (min_gap < 1) {
    throw InvalidArgument("min_gap must be >= 1");
  }

  const std::uint32_t w = raster_extent(pattern.window().width);
  const std::uint32_t h = raster_extent(pattern.window().height);
  const auto px = annotation_pixels(pattern, w, h);

  // Nearest-other-annotation Chebyshev distance in pixel space, found via
  // a coarse grid. Any neighbor beyond `threshold` cannot shrink the
  // square below max_halfwidth, so the search stops there.
  const std::int64_t threshold = 2 * max_halfwidth + min_gap + 1;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> coarse;
  auto cell_key = [&](std::int64_t x, std::int64_t y) {
    const std::int64_t gx = x / threshold;
    const std::int64_t gy = y / threshold;
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(gx)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(gy));
  };
  for (std::size_t i = 0; i < px.size(); ++i) {
    coarse[cell_key(px[i].x, px[i].y)].push_back(static_cast<std::uint32_t>(i));
  }

  DetectionMask out;
  out.mask = RasterMap(h, w, 1, Dtype::kU8);
  out.report.resize(pattern.size());

  for (std::size_t i = 0; i < px.size(); ++i) {
    std::int64_t nearest = threshold;  // "no neighbor within threshold"
    const std::int64_t gx = px[i].x / threshold;
    const std::int64_t gy = px[i].y / threshold;
    for (std::int64_t cy = gy - 1; cy <= gy + 1; ++cy) {
      for (std::int64_t cx = gx - 1; cx <= gx + 1; ++cx) {
        auto it = coarse.find(cell_key(cx * threshold, cy * threshold));
        if (it == coarse.end()) continue;
        for (std::uint32_t j : it->second) {
          if (j == i) continue;
          const std::int64_t d = std::max(std::abs(px[i].x - px[j].x),
                                          std::abs(px[i].y - px[j].y));
          nearest = std::min(nearest, d);
        }
      }
    }
    if (nearest == 0) {
      throw CoincidentPointsError("annotations " + std::to_string(i) +
                                  " and a neighbor share pixel (" + std::to_string(px[i].x) +
                                  ", " + std::to_string(px[i].y) + ")");
    }
    if (nearest <= min_gap) {
      throw CoincidentPointsError(
          "annotation " + std::to_string(i) + " is only " + std::to_string(nearest) +
          " px from its neighbor; components cannot keep a " + std::to_string(min_gap) +
          " px gap");
    }
    const std::int64_t by_distance = (nearest - min_gap - 1) / 2;
    const int halfwidth = static_cast<int>(
        std::clamp<std::int64_t>(std::min<std::int64_t>(by_distance, max_halfwidth), 0,
                                 max_halfwidth));
    out.report[i] = {i, px[i].x, px[i].y, halfwidth};

    const std::int64_t x0 = std::max<std::int64_t>(0, px[i].x - halfwidth);
    const std::int64_t x1 = std::min<std::int64_t>(w - 1, px[i].x + halfwidth);
    const std::int64_t y0 = std::max<std::int64_t>(0, px[i].y - halfwidth);
    const std::int64_t y1 = std::min<std::int64_t>(h - 1, px[i].y + halfwidth);
    for (std::int64_t y = y0; y <= y1; ++y) {
      for (std::int64_t x = x0; x <= x1; ++x) {
        out.mask.u8(static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(x)) = 1;
      }
    }
  }
  return out;
}

RasterMap generate_class_masks(const PointPattern& pattern, const RasterMap& detection_mask) {
  const ComponentLabeling labeling = label_components(detection_mask);
  const auto comp = map_annotations_to_components(pattern, detection_mask, labeling);

  std::vector<int> class_of_component(labeling.n_components + 1, -1);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    class_of_component[comp[i]] = pattern.label(i);
  }

  RasterMap channels(detection_mask.height(), detection_mask.width(),
                     static_cast<std::uint32_t>(pattern.n_classes()), Dtype::kU8);
  for (std::uint32_t y = 0; y < detection_mask.height(); ++y) {
    for (std::uint32_t x = 0; x < detection_mask.width(); ++x) {
      const std::size_t label = labeling.label_at(y, x);
      if (label == 0) continue;
      channels.u8(y, x, static_cast<std::uint32_t>(class_of_component[label])) = 1;
    }
  }
  return channels;
}

KVectorMap generate_kvector_map(const PointPattern& pattern, const RasterMap& detection_mask,
                                const std::vector<KVector>& k_vectors) {
  if (k_vectors.size() != pattern.size()) {
    throw InconsistentInput("have " + std::to_string(k_vectors.size()) +
                            " K-vectors for " + std::to_string(pattern.size()) + " cells");
  }
  for (std::size_t i = 0; i < k_vectors.size(); ++i) {
    if (k_vectors[i].cell_index != i) {
      throw InconsistentInput("K-vector " + std::to_string(i) + " carries cell index " +
                              std::to_string(k_vectors[i].cell_index));
    }
    if (i > 0 && (k_vectors[i].values.size() != k_vectors[0].values.size() ||
                  !(k_vectors[i].radii == k_vectors[0].radii))) {
      throw InconsistentInput("K-vectors have mismatched shapes");
    }
  }

  const ComponentLabeling labeling = label_components(detection_mask);
  const auto comp = map_annotations_to_components(pattern, detection_mask, labeling);
  std::vector<std::size_t> cell_of_component(labeling.n_components + 1, 0);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    cell_of_component[comp[i]] = i;
  }

  if (k_vectors.empty()) {
    // Empty pattern with an empty mask: an all-zero single-channel map.
    KVectorMap blank;
    blank.values = RasterMap(detection_mask.height(), detection_mask.width(), 1, Dtype::kF32);
    blank.validity = RasterMap(detection_mask.height(), detection_mask.width(), 1, Dtype::kU8);
    return blank;
  }

  const auto n_channels = static_cast<std::uint32_t>(k_vectors[0].values.size());
  KVectorMap out;
  out.values = RasterMap(detection_mask.height(), detection_mask.width(), n_channels,
                         Dtype::kF32);
  out.validity = RasterMap(detection_mask.height(), detection_mask.width(), 1, Dtype::kU8);
  for (std::uint32_t y = 0; y < detection_mask.height(); ++y) {
    for (std::uint32_t x = 0; x < detection_mask.width(); ++x) {
      const std::size_t label = labeling.label_at(y, x);
      if (label == 0) continue;
      const KVector& v = k_vectors[cell_of_component[label]];
      for (std::uint32_t c = 0; c < n_channels; ++c) {
        out.values.f32(y, x, c) = static_cast<float>(v.values[c]);
      }
      out.validity.u8(y, x) = 1;
    }
  }
  return out;
}

}  // namespace spatk

#include "spatk/inference.hpp"

#include <algorithm>
#include <cmath>

#include "spatk/components.hpp"
#include "spatk/errors.hpp"

namespace spatk {

std::vector<Prediction> extract_cells(const RasterMap& likelihood, const RasterMap& class_map,
                                      double threshold, std::size_t min_size) {
  if (likelihood.channels() != 1) {
    throw InvalidArgument("likelihood map must have a single channel");
  }
  if (likelihood.height() != class_map.height() || likelihood.width() != class_map.width()) {
    throw InvalidArgument("likelihood and class maps have mismatched extents");
  }
  if (!(threshold > 0.0) || !(threshold < 1.0)) {
    throw InvalidArgument("threshold must lie in (0, 1)");
  }

  RasterMap binary(likelihood.height(), likelihood.width(), 1, Dtype::kU8);
  for (std::uint32_t y = 0; y < likelihood.height(); ++y) {
    for (std::uint32_t x = 0; x < likelihood.width(); ++x) {
      binary.u8(y, x) = likelihood.value(y, x) >= threshold ? 1 : 0;
    }
  }

  const ComponentLabeling labeling = label_components(binary);
  std::vector<Prediction> predictions;
  for (std::size_t i = 0; i < labeling.n_components; ++i) {
    if (labeling.sizes[i] < min_size) continue;
    const Point centroid = labeling.centroids[i];
    const auto px = static_cast<std::uint32_t>(std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::floor(centroid.x + 0.5)), 0,
        static_cast<std::int64_t>(class_map.width()) - 1));
    const auto py = static_cast<std::uint32_t>(std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::floor(centroid.y + 0.5)), 0,
        static_cast<std::int64_t>(class_map.height()) - 1));
    int best_class = 0;
    double best = class_map.value(py, px, 0);
    for (std::uint32_t c = 1; c < class_map.channels(); ++c) {
      const double v = class_map.value(py, px, c);
      if (v > best) {
        best = v;
        best_class = static_cast<int>(c);
      }
    }
    predictions.push_back({centroid, best_class, labeling.sizes[i]});
  }
  return predictions;
}

}  // namespace spatk

#include "spatk/grid_index.hpp"

#include <cmath>
#include <string>

#include "spatk/errors.hpp"

namespace spatk {

GridIndex::GridIndex(const PointPattern& pattern, double cell_size)
    : pattern_(&pattern), cell_size_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw InvalidArgument("cell_size must be positive, got " + std::to_string(cell_size));
  }
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    buckets_[key(cell_of(pattern.x(i)), cell_of(pattern.y(i)))].push_back(
        static_cast<std::uint32_t>(i));
  }
}

std::int64_t GridIndex::cell_of(double coord) const {
  return static_cast<std::int64_t>(std::floor(coord / cell_size_));
}

std::size_t GridIndex::count_in_disk(Point center, double radius, int target_class,
                                     std::ptrdiff_t exclude) const {
  if (radius < 0.0) {
    throw InvalidArgument("radius must be non-negative");
  }
  const double r2 = radius * radius;
  const PointPattern& pat = *pattern_;
  std::size_t count = 0;
  for_each_candidate(center.x, center.y, radius, [&](std::uint32_t idx) {
    if (static_cast<std::ptrdiff_t>(idx) == exclude) return;
    if (pat.label(idx) != target_class) return;
    if (squared_distance(center.x, center.y, pat.x(idx), pat.y(idx)) < r2) ++count;
  });
  return count;
}

GridIndex build_index(const PointPattern& pattern, double cell_size) {
  return GridIndex(pattern, cell_size);
}

}  // namespace spatk

#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "spatk/point_pattern.hpp"

namespace spatk {

/// Uniform-grid spatial index over a PointPattern. Queries are exact: the
/// grid only prunes candidates, every survivor is tested against the true
/// predicate. Immutable after construction; concurrent reads are safe.
/// Holds a reference to its source pattern, which must outlive the index.
class GridIndex {
 public:
  GridIndex(const PointPattern& pattern, double cell_size);

  const PointPattern& pattern() const { return *pattern_; }
  double cell_size() const { return cell_size_; }
  std::size_t bucket_count() const { return buckets_.size(); }

  /// |{t : label(t) == target_class, d(center,t) < radius, t != exclude}|.
  /// The distance comparison is strict; exclude < 0 keeps all points.
  std::size_t count_in_disk(Point center, double radius, int target_class,
                            std::ptrdiff_t exclude = -1) const;

  /// Calls fn(point_index) for every point in a bucket intersecting the
  /// closed box [cx-half, cx+half] x [cy-half, cy+half]. Candidates only;
  /// the caller applies exact membership tests.
  template <typename Fn>
  void for_each_candidate(double cx, double cy, double half, Fn&& fn) const {
    const std::int64_t gx0 = cell_of(cx - half);
    const std::int64_t gx1 = cell_of(cx + half);
    const std::int64_t gy0 = cell_of(cy - half);
    const std::int64_t gy1 = cell_of(cy + half);
    for (std::int64_t gy = gy0; gy <= gy1; ++gy) {
      for (std::int64_t gx = gx0; gx <= gx1; ++gx) {
        auto it = buckets_.find(key(gx, gy));
        if (it == buckets_.end()) continue;
        for (std::uint32_t idx : it->second) fn(idx);
      }
    }
  }

  std::int64_t cell_of(double coord) const;

 private:
  static std::uint64_t key(std::int64_t gx, std::int64_t gy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(gx)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(gy));
  }

  const PointPattern* pattern_;
  double cell_size_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

/// Index with cell size = largest radius of interest, so a disk query
/// touches at most a 3x3 bucket neighborhood.
GridIndex build_index(const PointPattern& pattern, double cell_size);

}  // namespace spatk

#include "spatk/k_vector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spatk/errors.hpp"
#include "spatk/grid_index.hpp"
#include "spatk/parallel.hpp"

namespace spatk {

namespace {

void check_patch_args(double patch_size, double n_max) {
  if (!(patch_size > 0.0)) {
    throw InvalidArgument("patch_size must be positive");
  }
  if (!(n_max > 0.0)) {
    throw InvalidArgument("n_max must be positive");
  }
}

// Integer neighbor counts for one cell, class-major cumulative over radii.
// Candidates come either from a grid index or a full scan; both apply the
// same exact predicates, so counts are identical.
template <typename ForEachCandidate>
std::vector<std::size_t> patch_counts(const PointPattern& pat, std::size_t s,
                                      const RadiiGrid& radii, double patch_size,
                                      ForEachCandidate&& for_each) {
  const std::size_t n_r = radii.size();
  const double half = patch_size / 2.0;
  const double r_max = radii.max();
  const double sx = pat.x(s);
  const double sy = pat.y(s);
  const auto& rs = radii.values();
  std::vector<std::size_t> counts(static_cast<std::size_t>(pat.n_classes()) * n_r, 0);
  for_each([&](std::size_t t) {
    if (t == s) return;
    const double dx = pat.x(t) - sx;
    const double dy = pat.y(t) - sy;
    if (std::abs(dx) > half || std::abs(dy) > half) return;
    const double d2 = dx * dx + dy * dy;
    if (d2 >= r_max * r_max) return;
    const double d = std::sqrt(d2);
    const auto it = std::upper_bound(rs.begin(), rs.end(), d);
    const std::size_t base = static_cast<std::size_t>(pat.label(t)) * n_r;
    for (std::size_t j = static_cast<std::size_t>(it - rs.begin()); j < n_r; ++j) {
      ++counts[base + j];
    }
  });
  return counts;
}

KVector counts_to_vector(std::vector<std::size_t> counts, std::size_t cell_index,
                         const RadiiGrid& radii, int n_classes, double n_max) {
  KVector v{cell_index, radii, n_classes, n_max, std::vector<double>(counts.size())};
  for (std::size_t i = 0; i < counts.size(); ++i) {
    v.values[i] = static_cast<double>(counts[i]) / n_max;
  }
  return v;
}

}  // namespace

KVector cell_k_vector(const PointPattern& pattern, std::size_t cell_index,
                      const RadiiGrid& radii, double patch_size, double n_max) {
  pattern.check_index(cell_index);
  check_patch_args(patch_size, n_max);
  auto counts = patch_counts(pattern, cell_index, radii, patch_size, [&](auto&& fn) {
    for (std::size_t t = 0; t < pattern.size(); ++t) fn(t);
  });
  return counts_to_vector(std::move(counts), cell_index, radii, pattern.n_classes(), n_max);
}

std::vector<KVector> k_vector_field(const PointPattern& pattern, const RadiiGrid& radii,
                                    double patch_size, double n_max, int workers) {
  check_patch_args(patch_size, n_max);
  std::vector<KVector> field(pattern.size());
  if (pattern.empty()) return field;

  // Both predicates bound the neighborhood; index on the tighter one.
  const double reach = std::min(patch_size / 2.0, radii.max());
  const GridIndex index(pattern, reach);
  parallel_for(pattern.size(), workers, [&](std::size_t i) {
    auto counts = patch_counts(pattern, i, radii, patch_size, [&](auto&& fn) {
      index.for_each_candidate(pattern.x(i), pattern.y(i), reach,
                               [&](std::uint32_t t) { fn(static_cast<std::size_t>(t)); });
    });
    field[i] = counts_to_vector(std::move(counts), i, radii, pattern.n_classes(), n_max);
  });
  return field;
}

std::vector<double> nn_distance_vector(const PointPattern& pattern, std::size_t cell_index,
                                       double patch_size) {
  pattern.check_index(cell_index);
  if (!(patch_size > 0.0)) {
    throw InvalidArgument("patch_size must be positive");
  }
  const double half = patch_size / 2.0;
  const double sx = pattern.x(cell_index);
  const double sy = pattern.y(cell_index);
  const double sentinel = patch_size * std::numbers::sqrt2;
  std::vector<double> best(static_cast<std::size_t>(pattern.n_classes()),
                           std::numeric_limits<double>::infinity());
  for (std::size_t t = 0; t < pattern.size(); ++t) {
    if (t == cell_index) continue;
    const double dx = pattern.x(t) - sx;
    const double dy = pattern.y(t) - sy;
    if (std::abs(dx) > half || std::abs(dy) > half) continue;
    const double d = std::sqrt(dx * dx + dy * dy);
    auto& slot = best[static_cast<std::size_t>(pattern.label(t))];
    slot = std::min(slot, d);
  }
  for (auto& v : best) {
    if (!std::isfinite(v)) v = sentinel;
  }
  return best;
}

std::vector<double> density_vector(const PointPattern& pattern, std::size_t cell_index,
                                   double patch_size, double n_max) {
  pattern.check_index(cell_index);
  check_patch_args(patch_size, n_max);
  const double half = patch_size / 2.0;
  const double sx = pattern.x(cell_index);
  const double sy = pattern.y(cell_index);
  std::vector<std::size_t> counts(static_cast<std::size_t>(pattern.n_classes()), 0);
  for (std::size_t t = 0; t < pattern.size(); ++t) {
    if (t == cell_index) continue;
    if (std::abs(pattern.x(t) - sx) > half || std::abs(pattern.y(t) - sy) > half) continue;
    ++counts[static_cast<std::size_t>(pattern.label(t))];
  }
  std::vector<double> density(counts.size());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    density[c] = static_cast<double>(counts[c]) / n_max;
  }
  return density;
}

std::size_t max_patch_count(const PointPattern& pattern, double patch_size) {
  if (!(patch_size > 0.0)) {
    throw InvalidArgument("patch_size must be positive");
  }
  const double half = patch_size / 2.0;
  const GridIndex index(pattern, half);
  std::size_t best = 0;
  for (std::size_t s = 0; s < pattern.size(); ++s) {
    std::size_t count = 0;
    index.for_each_candidate(pattern.x(s), pattern.y(s), half, [&](std::uint32_t t) {
      if (std::abs(pattern.x(t) - pattern.x(s)) <= half &&
          std::abs(pattern.y(t) - pattern.y(s)) <= half) {
        ++count;
      }
    });
    best = std::max(best, count);
  }
  return best;
}

AverageKCurves average_k_curves(const PointPattern& pattern, const RadiiGrid& radii,
                                double patch_size, double n_max, int workers) {
  if (pattern.empty()) {
    throw EmptyPatternError("average_k_curves needs a nonempty pattern");
  }
  const auto field = k_vector_field(pattern, radii, patch_size, n_max, workers);
  const std::size_t n_cls = static_cast<std::size_t>(pattern.n_classes());
  const std::size_t n_r = radii.size();
  AverageKCurves avg{radii, pattern.n_classes(),
                     std::vector<double>(n_cls * n_cls * n_r, 0.0),
                     std::vector<bool>(n_cls, false)};
  std::vector<std::size_t> n_cells(n_cls, 0);
  for (std::size_t i = 0; i < field.size(); ++i) {
    const std::size_t src = static_cast<std::size_t>(pattern.label(i));
    ++n_cells[src];
    for (std::size_t k = 0; k < n_cls * n_r; ++k) {
      avg.means[src * n_cls * n_r + k] += field[i].values[k];
    }
  }
  for (std::size_t src = 0; src < n_cls; ++src) {
    if (n_cells[src] == 0) continue;
    avg.present[src] = true;
    for (std::size_t k = 0; k < n_cls * n_r; ++k) {
      avg.means[src * n_cls * n_r + k] /= static_cast<double>(n_cells[src]);
    }
  }
  return avg;
}

}  // namespace spatk

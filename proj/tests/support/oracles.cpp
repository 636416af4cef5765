#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spatk::testing {

std::size_t brute_count_in_disk(const PointPattern& pattern, Point center, double radius,
                                int target_class, std::ptrdiff_t exclude) {
  const double r2 = radius * radius;
  std::size_t count = 0;
  for (std::size_t t = 0; t < pattern.size(); ++t) {
    if (static_cast<std::ptrdiff_t>(t) == exclude) continue;
    if (pattern.label(t) != target_class) continue;
    if (squared_distance(center.x, center.y, pattern.x(t), pattern.y(t)) < r2) ++count;
  }
  return count;
}

KVector brute_cell_k_vector(const PointPattern& pattern, std::size_t cell,
                            const RadiiGrid& radii, double patch_size, double n_max) {
  const double half = patch_size / 2.0;
  const std::size_t n_r = radii.size();
  KVector v{cell, radii, pattern.n_classes(), n_max,
            std::vector<double>(static_cast<std::size_t>(pattern.n_classes()) * n_r, 0.0)};
  for (int c = 0; c < pattern.n_classes(); ++c) {
    for (std::size_t j = 0; j < n_r; ++j) {
      const double r2 = radii[j] * radii[j];
      std::size_t count = 0;
      for (std::size_t t = 0; t < pattern.size(); ++t) {
        if (t == cell || pattern.label(t) != c) continue;
        const double dx = pattern.x(t) - pattern.x(cell);
        const double dy = pattern.y(t) - pattern.y(cell);
        if (std::abs(dx) > half || std::abs(dy) > half) continue;
        if (dx * dx + dy * dy < r2) ++count;
      }
      v.values[static_cast<std::size_t>(c) * n_r + j] = static_cast<double>(count) / n_max;
    }
  }
  return v;
}

KCurve brute_ripley_k(const PointPattern& pattern, int source_class, int target_class,
                      const RadiiGrid& radii, Correction correction) {
  const bool same = source_class == target_class;
  const double area = pattern.window().area();
  const double pair_norm =
      static_cast<double>(pattern.class_count(target_class)) - (same ? 1.0 : 0.0);
  KCurve curve{radii, std::vector<double>(radii.size(), 0.0), source_class, target_class};
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double r = radii[j];
    const double r2 = r * r;
    std::size_t total = 0;
    std::size_t n_src = 0;
    for (std::size_t s = 0; s < pattern.size(); ++s) {
      if (pattern.label(s) != source_class) continue;
      if (correction == Correction::kBorder &&
          pattern.window().border_distance(pattern.x(s), pattern.y(s)) < r) {
        continue;
      }
      ++n_src;
      for (std::size_t t = 0; t < pattern.size(); ++t) {
        if (t == s || pattern.label(t) != target_class) continue;
        if (squared_distance(pattern.x(s), pattern.y(s), pattern.x(t), pattern.y(t)) < r2) {
          ++total;
        }
      }
    }
    curve.values[j] = n_src == 0 ? 0.0
                                 : area * static_cast<double>(total) /
                                       (static_cast<double>(n_src) * pair_norm);
  }
  return curve;
}

double naive_dice_loss(const RasterMap& pred, const RasterMap& gt, double smooth) {
  double total = 0.0;
  for (std::uint32_t c = 0; c < pred.channels(); ++c) {
    double inter = 0.0, sp = 0.0, sg = 0.0;
    for (std::uint32_t y = 0; y < pred.height(); ++y) {
      for (std::uint32_t x = 0; x < pred.width(); ++x) {
        inter += pred.value(y, x, c) * gt.value(y, x, c);
        sp += pred.value(y, x, c);
        sg += gt.value(y, x, c);
      }
    }
    const double denom = sp + sg + smooth;
    total += denom == 0.0 ? 0.0 : 1.0 - (2.0 * inter + smooth) / denom;
  }
  return total / pred.channels();
}

namespace {

std::size_t uf_find(std::vector<std::size_t>& parent, std::size_t a) {
  while (parent[a] != a) {
    parent[a] = parent[parent[a]];
    a = parent[a];
  }
  return a;
}

void uf_union(std::vector<std::size_t>& parent, std::size_t a, std::size_t b) {
  parent[uf_find(parent, a)] = uf_find(parent, b);
}

}  // namespace

UnionFindLabeling union_find_components(const RasterMap& mask) {
  const std::uint32_t h = mask.height();
  const std::uint32_t w = mask.width();
  const std::size_t n = static_cast<std::size_t>(h) * w;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);

  auto fg = [&](std::uint32_t y, std::uint32_t x) { return mask.value(y, x) != 0.0; };
  for (std::uint32_t y = 0; y < h; ++y) {
    for (std::uint32_t x = 0; x < w; ++x) {
      if (!fg(y, x)) continue;
      const std::size_t at = static_cast<std::size_t>(y) * w + x;
      // Union with the four already-visited 8-neighbors.
      const int offsets[4][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}};
      for (const auto& o : offsets) {
        const std::int64_t nx = static_cast<std::int64_t>(x) + o[0];
        const std::int64_t ny = static_cast<std::int64_t>(y) + o[1];
        if (nx < 0 || ny < 0 || nx >= w) continue;
        if (fg(static_cast<std::uint32_t>(ny), static_cast<std::uint32_t>(nx))) {
          uf_union(parent, at, static_cast<std::size_t>(ny) * w + nx);
        }
      }
    }
  }

  UnionFindLabeling out;
  out.component_of.assign(n, -1);
  std::vector<std::int32_t> label_of_root(n, -1);
  for (std::uint32_t y = 0; y < h; ++y) {
    for (std::uint32_t x = 0; x < w; ++x) {
      if (!fg(y, x)) continue;
      const std::size_t at = static_cast<std::size_t>(y) * w + x;
      const std::size_t root = uf_find(parent, at);
      if (label_of_root[root] < 0) {
        label_of_root[root] = static_cast<std::int32_t>(out.n_components++);
        out.sizes.push_back(0);
      }
      out.component_of[at] = label_of_root[root];
      ++out.sizes[static_cast<std::size_t>(label_of_root[root])];
    }
  }
  return out;
}

namespace {

bool augment(std::size_t p, const std::vector<std::vector<std::size_t>>& feasible,
             std::vector<std::ptrdiff_t>& match_gt, std::vector<bool>& visited) {
  for (std::size_t g : feasible[p]) {
    if (visited[g]) continue;
    visited[g] = true;
    if (match_gt[g] < 0 ||
        augment(static_cast<std::size_t>(match_gt[g]), feasible, match_gt, visited)) {
      match_gt[g] = static_cast<std::ptrdiff_t>(p);
      return true;
    }
  }
  return false;
}

}  // namespace

std::size_t optimal_matching_size(const std::vector<Point>& pred,
                                  const std::vector<Point>& gt, double radius) {
  const double r2 = radius * radius;
  std::vector<std::vector<std::size_t>> feasible(pred.size());
  for (std::size_t p = 0; p < pred.size(); ++p) {
    for (std::size_t g = 0; g < gt.size(); ++g) {
      if (squared_distance(pred[p].x, pred[p].y, gt[g].x, gt[g].y) <= r2) {
        feasible[p].push_back(g);
      }
    }
  }
  std::vector<std::ptrdiff_t> match_gt(gt.size(), -1);
  std::size_t size = 0;
  for (std::size_t p = 0; p < pred.size(); ++p) {
    std::vector<bool> visited(gt.size(), false);
    if (augment(p, feasible, match_gt, visited)) ++size;
  }
  return size;
}

}  // namespace spatk::testing

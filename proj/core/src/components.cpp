#include "spatk/components.hpp"

#include <vector>

#include "spatk/errors.hpp"

namespace spatk {

ComponentLabeling label_components(const RasterMap& mask) {
  if (mask.channels() != 1) {
    throw InvalidArgument("label_components expects a single-channel mask");
  }
  const std::uint32_t h = mask.height();
  const std::uint32_t w = mask.width();

  ComponentLabeling out;
  out.label_map = RasterMap(h, w, 1, Dtype::kF32);

  std::vector<std::uint32_t> labels(static_cast<std::size_t>(h) * w, 0);
  std::vector<std::uint32_t> stack;
  std::uint32_t next = 0;

  auto fg = [&](std::uint32_t y, std::uint32_t x) { return mask.value(y, x) != 0.0; };

  for (std::uint32_t y = 0; y < h; ++y) {
    for (std::uint32_t x = 0; x < w; ++x) {
      const std::size_t at = static_cast<std::size_t>(y) * w + x;
      if (!fg(y, x) || labels[at] != 0) continue;
      ++next;
      labels[at] = next;
      stack.push_back(static_cast<std::uint32_t>(at));
      double sum_x = 0.0, sum_y = 0.0;
      std::size_t size = 0;
      while (!stack.empty()) {
        const std::uint32_t p = stack.back();
        stack.pop_back();
        const std::uint32_t py = p / w;
        const std::uint32_t px = p % w;
        sum_x += px;
        sum_y += py;
        ++size;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const std::int64_t ny = static_cast<std::int64_t>(py) + dy;
            const std::int64_t nx = static_cast<std::int64_t>(px) + dx;
            if (ny < 0 || nx < 0 || ny >= h || nx >= w) continue;
            const std::size_t nat = static_cast<std::size_t>(ny) * w + nx;
            if (labels[nat] == 0 && fg(static_cast<std::uint32_t>(ny),
                                       static_cast<std::uint32_t>(nx))) {
              labels[nat] = next;
              stack.push_back(static_cast<std::uint32_t>(nat));
            }
          }
        }
      }
      out.centroids.push_back(
          {sum_x / static_cast<double>(size), sum_y / static_cast<double>(size)});
      out.sizes.push_back(size);
    }
  }

  out.n_components = next;
  auto values = out.label_map.f32_values();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    values[i] = static_cast<float>(labels[i]);
  }
  return out;
}

}  // namespace spatk

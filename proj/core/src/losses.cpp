#include "spatk/losses.hpp"

#include <cmath>

#include "spatk/errors.hpp"

namespace spatk {

double dice_loss(const RasterMap& pred, const RasterMap& gt, double smooth) {
  if (!pred.same_shape(gt)) {
    throw InvalidArgument("dice_loss operands have mismatched shapes");
  }
  if (!(smooth >= 0.0) || !std::isfinite(smooth)) {
    throw InvalidArgument("smooth must be non-negative and finite");
  }
  double total = 0.0;
  for (std::uint32_t c = 0; c < pred.channels(); ++c) {
    double inter = 0.0, sum_p = 0.0, sum_g = 0.0;
    for (std::uint32_t y = 0; y < pred.height(); ++y) {
      for (std::uint32_t x = 0; x < pred.width(); ++x) {
        const double p = pred.value(y, x, c);
        const double g = gt.value(y, x, c);
        inter += p * g;
        sum_p += p;
        sum_g += g;
      }
    }
    const double denom = sum_p + sum_g + smooth;
    total += denom == 0.0 ? 0.0 : 1.0 - (2.0 * inter + smooth) / denom;
  }
  return total / static_cast<double>(pred.channels());
}

double combined_loss(double detection, double classification, double spatial,
                     double clustering, const std::array<double, 4>& weights) {
  const std::array<double, 4> losses{detection, classification, spatial, clustering};
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!std::isfinite(losses[i]) || !std::isfinite(weights[i])) {
      throw InvalidArgument("combined_loss inputs must be finite");
    }
    total += weights[i] * losses[i];
  }
  return total;
}

}  // namespace spatk

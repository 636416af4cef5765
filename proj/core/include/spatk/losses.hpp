#pragma once

#include <array>

#include "spatk/raster.hpp"

namespace spatk {

/// Soft Dice loss, 1 - (2*sum(p*g) + smooth) / (sum(p) + sum(g) + smooth),
/// averaged over channels when there are several. pred may be a soft
/// probability map; gt is binary. smooth keeps empty channels at 0 loss.
double dice_loss(const RasterMap& pred, const RasterMap& gt, double smooth = 1.0);

/// Weighted sum of the four task losses (detection, classification,
/// spatial context, clustering); all weights default to 1.
double combined_loss(double detection, double classification, double spatial,
                     double clustering,
                     const std::array<double, 4>& weights = {1.0, 1.0, 1.0, 1.0});

}  // namespace spatk

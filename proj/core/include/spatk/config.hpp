#pragma once

#include <cstdint>
#include <vector>

#include "spatk/radii.hpp"

namespace spatk {

/// Toolkit-wide knobs with the defaults used throughout: 180 px patches,
/// radii 15..90 step 15, n_max 100, 5 sub-classes, 9x9 max dilation
/// square, detection threshold 0.5, 5 px minimum component, 6 px match
/// radius.
struct Config {
  double r_max = 90.0;
  double r_step = 15.0;
  std::vector<double> radii_override;  // wins over r_max/r_step when set

  double patch_size = 180.0;
  double n_max = 100.0;
  std::size_t k = 5;
  int max_halfwidth = 4;
  int min_gap = 1;
  double threshold = 0.5;
  std::size_t min_size = 5;
  double match_radius = 6.0;
  std::uint64_t seed = 0;
  int workers = 1;

  RadiiGrid radii() const {
    return radii_override.empty() ? RadiiGrid::uniform(r_max, r_step)
                                  : RadiiGrid(radii_override);
  }
  void validate() const;
};

}  // namespace spatk

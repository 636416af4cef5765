#pragma once

#include <cstddef>
#include <vector>

namespace spatk {

/// Strictly increasing sampling radii, all positive. Default-constructed
/// grids are empty placeholders; any grid built from values is validated.
class RadiiGrid {
 public:
  RadiiGrid() = default;
  explicit RadiiGrid(std::vector<double> radii);

  /// {step, 2*step, ..., r_max}. r_max must be a positive multiple of step.
  static RadiiGrid uniform(double r_max, double step);
  /// The 15..90 step 15 grid used throughout.
  static RadiiGrid defaults() { return uniform(90.0, 15.0); }

  std::size_t size() const { return radii_.size(); }
  double operator[](std::size_t i) const { return radii_[i]; }
  double max() const { return radii_.back(); }
  const std::vector<double>& values() const { return radii_; }

  bool operator==(const RadiiGrid& other) const { return radii_ == other.radii_; }

 private:
  std::vector<double> radii_;
};

}  // namespace spatk

#include "spatk/radii.hpp"

#include <cmath>
#include <string>

#include "spatk/errors.hpp"

namespace spatk {

RadiiGrid::RadiiGrid(std::vector<double> radii) : radii_(std::move(radii)) {
  if (radii_.empty()) {
    throw InvalidArgument("radii grid must be nonempty");
  }
  double prev = 0.0;
  for (double r : radii_) {
    if (!std::isfinite(r) || r <= prev) {
      throw InvalidArgument("radii must be positive, finite and strictly increasing");
    }
    prev = r;
  }
}

RadiiGrid RadiiGrid::uniform(double r_max, double step) {
  if (!(step > 0.0) || !(r_max >= step)) {
    throw InvalidArgument("radii grid needs 0 < step <= r_max");
  }
  std::vector<double> radii;
  const long n = std::lround(r_max / step);
  if (std::abs(n * step - r_max) > 1e-9 * r_max) {
    throw InvalidArgument("r_max must be a multiple of step");
  }
  radii.reserve(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) {
    radii.push_back(static_cast<double>(i) * step);
  }
  return RadiiGrid(std::move(radii));
}

}  // namespace spatk

#include "spatk/config.hpp"

#include "spatk/errors.hpp"

namespace spatk {

void Config::validate() const {
  radii();  // throws on a bad grid
  if (!(patch_size > 0.0)) throw InvalidArgument("patch_size must be positive");
  if (!(n_max > 0.0)) throw InvalidArgument("n_max must be positive");
  if (k == 0) throw InvalidArgument("k must be >= 1");
  if (max_halfwidth < 1) throw InvalidArgument("max_halfwidth must be >= 1");
  if (min_gap < 1) throw InvalidArgument("min_gap must be >= 1");
  if (!(threshold > 0.0) || !(threshold < 1.0)) {
    throw InvalidArgument("threshold must lie in (0, 1)");
  }
  if (!(match_radius > 0.0)) throw InvalidArgument("match_radius must be positive");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
}

}  // namespace spatk

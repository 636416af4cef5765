#include "spatk/random.hpp"

#include <cmath>

#include "spatk/errors.hpp"

namespace spatk {

double Rng::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_double() - 1.0;
    v = 2.0 * next_double() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  have_spare_ = true;
  return u * m;
}

std::uint64_t Rng::derive_seed(std::uint64_t master, std::uint64_t index) {
  Rng mix(master ^ (0xA24BAED4963EE407ull * (index + 1)));
  return mix.next_u64();
}

PointPattern simulate_uniform_pattern(const Window& window,
                                      const std::vector<std::size_t>& per_class_counts,
                                      std::uint64_t seed) {
  if (per_class_counts.empty()) {
    throw InvalidArgument("simulate_uniform_pattern needs at least one class");
  }
  Rng rng(seed);
  std::vector<double> xs, ys;
  std::vector<int> labels;
  for (std::size_t c = 0; c < per_class_counts.size(); ++c) {
    for (std::size_t i = 0; i < per_class_counts[c]; ++i) {
      xs.push_back(rng.uniform(window.x0, window.x0 + window.width));
      ys.push_back(rng.uniform(window.y0, window.y0 + window.height));
      labels.push_back(static_cast<int>(c));
    }
  }
  return PointPattern(std::move(xs), std::move(ys), std::move(labels), window,
                      static_cast<int>(per_class_counts.size()));
}

}  // namespace spatk

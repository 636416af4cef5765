#include "spatk/distances.hpp"

#include <algorithm>
#include <cmath>

#include "spatk/errors.hpp"

namespace spatk {

namespace {

void check_shapes(std::size_t a, std::size_t b) {
  if (a != b) {
    throw InvalidArgument("distance operands have mismatched shapes (" +
                          std::to_string(a) + " vs " + std::to_string(b) + " entries)");
  }
}

void check_grids(const RadiiGrid& a, const RadiiGrid& b) {
  if (!(a == b)) {
    throw InvalidArgument("distance operands have mismatched radii grids");
  }
}

}  // namespace

double ks_distance(std::span<const double> a, std::span<const double> b) {
  check_shapes(a.size(), b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

double ks_distance(const KVector& a, const KVector& b) {
  check_grids(a.radii, b.radii);
  if (a.n_classes != b.n_classes) {
    throw InvalidArgument("distance operands have different class counts");
  }
  return ks_distance(std::span<const double>(a.values), std::span<const double>(b.values));
}

double ks_distance(const KCurve& a, const KCurve& b) {
  check_grids(a.radii, b.radii);
  return ks_distance(std::span<const double>(a.values), std::span<const double>(b.values));
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  check_shapes(a.size(), b.size());
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += std::abs(a[i] - b[i]);
  }
  return total;
}

double l1_distance(const KVector& a, const KVector& b) {
  check_grids(a.radii, b.radii);
  if (a.n_classes != b.n_classes) {
    throw InvalidArgument("distance operands have different class counts");
  }
  return l1_distance(std::span<const double>(a.values), std::span<const double>(b.values));
}

double l1_distance(const KCurve& a, const KCurve& b) {
  check_grids(a.radii, b.radii);
  return l1_distance(std::span<const double>(a.values), std::span<const double>(b.values));
}

}  // namespace spatk

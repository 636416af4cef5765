#pragma once

#include <span>

#include "spatk/k_function.hpp"
#include "spatk/k_vector.hpp"

namespace spatk {

/// Kolmogorov-Smirnov style distance: max |a[i] - b[i]| over the sampled
/// entries. Shapes must match.
double ks_distance(std::span<const double> a, std::span<const double> b);
double ks_distance(const KVector& a, const KVector& b);
double ks_distance(const KCurve& a, const KCurve& b);

/// L1 surrogate: sum |a[i] - b[i]|.
double l1_distance(std::span<const double> a, std::span<const double> b);
double l1_distance(const KVector& a, const KVector& b);
double l1_distance(const KCurve& a, const KCurve& b);

}  // namespace spatk

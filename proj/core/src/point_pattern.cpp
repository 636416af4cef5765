#include "spatk/point_pattern.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spatk/errors.hpp"

namespace spatk {

double Window::border_distance(double x, double y) const {
  const double left = x - x0;
  const double right = x0 + width - x;
  const double bottom = y - y0;
  const double top = y0 + height - y;
  return std::min(std::min(left, right), std::min(bottom, top));
}

PointPattern::PointPattern(std::vector<double> xs, std::vector<double> ys,
                           std::vector<int> labels, Window window, int n_classes)
    : xs_(std::move(xs)),
      ys_(std::move(ys)),
      labels_(std::move(labels)),
      window_(window),
      n_classes_(n_classes) {
  if (n_classes_ <= 0) {
    throw InvalidArgument("n_classes must be positive, got " + std::to_string(n_classes_));
  }
  if (window_.width <= 0.0 || window_.height <= 0.0) {
    throw InvalidArgument("window must have positive width and height");
  }
  if (xs_.size() != ys_.size() || xs_.size() != labels_.size()) {
    throw InvalidArgument("point pattern arrays have mismatched lengths");
  }
  class_counts_.assign(static_cast<std::size_t>(n_classes_), 0);
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) {
      throw InvalidArgument("point " + std::to_string(i) + " has non-finite coordinates");
    }
    if (!window_.contains(xs_[i], ys_[i])) {
      throw InvalidArgument("point " + std::to_string(i) + " lies outside the window");
    }
    if (labels_[i] < 0 || labels_[i] >= n_classes_) {
      throw InvalidArgument("point " + std::to_string(i) + " has label " +
                            std::to_string(labels_[i]) + " outside [0, " +
                            std::to_string(n_classes_) + ")");
    }
    ++class_counts_[static_cast<std::size_t>(labels_[i])];
  }
}

std::size_t PointPattern::class_count(int label) const {
  check_class(label);
  return class_counts_[static_cast<std::size_t>(label)];
}

void PointPattern::check_index(std::size_t i) const {
  if (i >= size()) {
    throw OutOfRangeError("cell index " + std::to_string(i) + " out of range [0, " +
                          std::to_string(size()) + ")");
  }
}

void PointPattern::check_class(int label) const {
  if (label < 0 || label >= n_classes_) {
    throw InvalidArgument("class " + std::to_string(label) + " outside [0, " +
                          std::to_string(n_classes_) + ")");
  }
}

}  // namespace spatk

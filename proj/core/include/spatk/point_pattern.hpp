#pragma once

#include <cstdint>
#include <vector>

namespace spatk {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned observation window, boundary inclusive.
struct Window {
  double x0 = 0.0;
  double y0 = 0.0;
  double width = 0.0;
  double height = 0.0;

  double area() const { return width * height; }
  bool contains(double x, double y) const {
    return x >= x0 && x <= x0 + width && y >= y0 && y <= y0 + height;
  }
  /// Distance from (x, y) to the nearest window edge.
  double border_distance(double x, double y) const;
};

/// Multi-class 2D point set over a rectangular window.
///
/// Coordinates are doubles even though annotations are integer pixels, so
/// centroid-derived predictions flow through the same type. Duplicate
/// points are permitted and counted with multiplicity.
class PointPattern {
 public:
  PointPattern(std::vector<double> xs, std::vector<double> ys,
               std::vector<int> labels, Window window, int n_classes);

  std::size_t size() const { return xs_.size(); }
  bool empty() const { return xs_.empty(); }
  int n_classes() const { return n_classes_; }
  const Window& window() const { return window_; }

  double x(std::size_t i) const { return xs_[i]; }
  double y(std::size_t i) const { return ys_[i]; }
  int label(std::size_t i) const { return labels_[i]; }
  Point point(std::size_t i) const { return {xs_[i], ys_[i]}; }

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  const std::vector<int>& labels() const { return labels_; }

  /// Number of points carrying the given class label.
  std::size_t class_count(int label) const;

  /// Throws OutOfRangeError unless 0 <= i < size().
  void check_index(std::size_t i) const;
  /// Throws InvalidArgument unless 0 <= label < n_classes().
  void check_class(int label) const;

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<int> labels_;
  std::vector<std::size_t> class_counts_;
  Window window_;
  int n_classes_ = 0;
};

inline double squared_distance(double ax, double ay, double bx, double by) {
  const double dx = ax - bx;
  const double dy = ay - by;
  return dx * dx + dy * dy;
}

}  // namespace spatk

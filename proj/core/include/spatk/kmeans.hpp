#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "spatk/k_vector.hpp"
#include "spatk/point_pattern.hpp"
#include "spatk/raster.hpp"

namespace spatk {

/// Fixed-dimension feature vector per cell with a class label. Features
/// may be raw K-vectors or externally computed network features; the
/// clustering is agnostic to their provenance. All iteration that affects
/// results runs in sorted cell-index order, so row order never matters.
class FeatureTable {
 public:
  FeatureTable(std::vector<std::int64_t> cell_indices, std::vector<int> class_labels,
               std::vector<double> features, std::size_t dim, int n_classes = 0);

  static FeatureTable from_k_vectors(const PointPattern& pattern,
                                     const std::vector<KVector>& field);

  std::size_t size() const { return cell_indices_.size(); }
  std::size_t dim() const { return dim_; }
  int n_classes() const { return n_classes_; }

  std::int64_t cell_index(std::size_t row) const { return cell_indices_[row]; }
  int class_label(std::size_t row) const { return class_labels_[row]; }
  std::span<const double> features(std::size_t row) const {
    return {features_.data() + row * dim_, dim_};
  }

  /// Row indices sorted by cell index.
  const std::vector<std::size_t>& sorted_rows() const { return sorted_rows_; }

 private:
  std::vector<std::int64_t> cell_indices_;
  std::vector<int> class_labels_;
  std::vector<double> features_;  // size() x dim(), row-major
  std::size_t dim_ = 0;
  int n_classes_ = 0;
  std::vector<std::size_t> sorted_rows_;
};

struct KMeansOptions {
  std::size_t max_iters = 100;
  double tol = 1e-4;
  int workers = 1;
};

struct KMeansResult {
  std::vector<double> centroids;          // k x dim, row-major
  std::vector<std::int64_t> member_cells; // sorted cell indices of the class
  std::vector<int> assignments;           // local cluster per member
  std::vector<double> inertia_history;    // after every assignment step
  std::size_t iterations = 0;
};

/// Lloyd k-means over one class's features. Cold start uses k-means++
/// seeded from `seed` and requires >= k distinct member vectors; a warm
/// start takes the previous centroids and accepts any member count >= 1.
/// Clusters that lose all members are re-seeded to the member farthest
/// from their previous centroid. Deterministic for a fixed seed and
/// independent of worker count.
KMeansResult kmeans_fit(const FeatureTable& features, int class_label, std::size_t k,
                        std::optional<std::span<const double>> warm_centroids,
                        std::uint64_t seed, const KMeansOptions& options = {});

/// Per-class centroids and cell assignments to global sub-classes
/// (class * k + local cluster). Carries the state warm starts need.
struct ClusterModel {
  int n_classes = 0;
  std::size_t k = 0;
  std::size_t dim = 0;
  std::size_t epoch = 0;
  std::uint64_t seed = 0;
  bool normalized = false;
  std::vector<std::vector<double>> centroids;       // per class, k x dim
  std::vector<std::int64_t> cells;                  // sorted
  std::vector<int> subclasses;                      // global ids, parallel to cells

  int subclass_of(std::int64_t cell) const;
};

struct PseudoLabelOptions {
  std::size_t max_iters = 100;
  double tol = 1e-4;
  /// Z-score features per dimension before clustering. Off by default.
  bool normalize = false;
  int workers = 1;
};

/// Epoch update: k-means per class, warm-started from `previous` when
/// given, emitting global sub-class ids. A fresh model starts at epoch 0;
/// warm updates increment the previous epoch.
ClusterModel update_pseudo_labels(const FeatureTable& features,
                                  const std::optional<ClusterModel>& previous, std::size_t k,
                                  std::uint64_t seed, const PseudoLabelOptions& options = {});

/// One binary channel per global sub-class: the union of detection-mask
/// components whose cell carries that sub-class. k = 1 reduces to the
/// class masks.
RasterMap pseudo_label_masks(const ClusterModel& model, const RasterMap& detection_mask,
                             const PointPattern& pattern);

void save_cluster_model(const ClusterModel& model, const std::filesystem::path& path);
ClusterModel load_cluster_model(const std::filesystem::path& path);

}  // namespace spatk

#include "spatk/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <string>

#include <json.hpp>

#include "spatk/components.hpp"
#include "spatk/errors.hpp"
#include "spatk/groundtruth.hpp"
#include "spatk/parallel.hpp"
#include "spatk/random.hpp"
#include "spatk/version.hpp"

namespace spatk {

FeatureTable::FeatureTable(std::vector<std::int64_t> cell_indices,
                           std::vector<int> class_labels, std::vector<double> features,
                           std::size_t dim, int n_classes)
    : cell_indices_(std::move(cell_indices)),
      class_labels_(std::move(class_labels)),
      features_(std::move(features)),
      dim_(dim),
      n_classes_(n_classes) {
  if (dim_ == 0) {
    throw InvalidArgument("feature dimension must be positive");
  }
  if (cell_indices_.size() != class_labels_.size() ||
      features_.size() != cell_indices_.size() * dim_) {
    throw InvalidArgument("feature table arrays have mismatched lengths");
  }
  int max_label = -1;
  for (std::size_t i = 0; i < cell_indices_.size(); ++i) {
    if (class_labels_[i] < 0) {
      throw InvalidArgument("feature table row " + std::to_string(i) +
                            " has a negative class label");
    }
    max_label = std::max(max_label, class_labels_[i]);
  }
  for (double v : features_) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("feature table contains non-finite values");
    }
  }
  if (n_classes_ == 0) {
    n_classes_ = max_label + 1;
  } else if (max_label >= n_classes_) {
    throw InvalidArgument("feature table label exceeds n_classes");
  }
  sorted_rows_.resize(cell_indices_.size());
  for (std::size_t i = 0; i < sorted_rows_.size(); ++i) sorted_rows_[i] = i;
  std::sort(sorted_rows_.begin(), sorted_rows_.end(),
            [&](std::size_t a, std::size_t b) { return cell_indices_[a] < cell_indices_[b]; });
  for (std::size_t i = 1; i < sorted_rows_.size(); ++i) {
    if (cell_indices_[sorted_rows_[i]] == cell_indices_[sorted_rows_[i - 1]]) {
      throw InvalidArgument("duplicate cell index " +
                            std::to_string(cell_indices_[sorted_rows_[i]]) +
                            " in feature table");
    }
  }
}

FeatureTable FeatureTable::from_k_vectors(const PointPattern& pattern,
                                          const std::vector<KVector>& field) {
  if (field.size() != pattern.size()) {
    throw InconsistentInput("K-vector field does not cover the pattern");
  }
  const std::size_t dim = field.empty() ? 1 : field[0].values.size();
  std::vector<std::int64_t> cells(pattern.size());
  std::vector<int> labels(pattern.size());
  std::vector<double> values;
  values.reserve(pattern.size() * dim);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    cells[i] = static_cast<std::int64_t>(i);
    labels[i] = pattern.label(i);
    values.insert(values.end(), field[i].values.begin(), field[i].values.end());
  }
  return FeatureTable(std::move(cells), std::move(labels), std::move(values), dim,
                      pattern.n_classes());
}

namespace {

double sq_dist(std::span<const double> a, const double* b) {
  double total = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    total += diff * diff;
  }
  return total;
}

// k-means++ over the member rows, deterministic for a fixed seed.
std::vector<double> plusplus_init(const FeatureTable& features,
                                  const std::vector<std::size_t>& members, std::size_t k,
                                  std::size_t dim, Rng& rng) {
  std::vector<double> centroids;
  centroids.reserve(k * dim);
  const auto first = features.features(members[rng.uniform_index(members.size())]);
  centroids.insert(centroids.end(), first.begin(), first.end());

  std::vector<double> d2(members.size());
  for (std::size_t j = 1; j < k; ++j) {
    double total = 0.0;
    for (std::size_t m = 0; m < members.size(); ++m) {
      double best = std::numeric_limits<double>::infinity();
      const auto x = features.features(members[m]);
      for (std::size_t c = 0; c < j; ++c) {
        best = std::min(best, sq_dist(x, centroids.data() + c * dim));
      }
      d2[m] = best;
      total += best;
    }
    const double target = rng.next_double() * total;
    double cum = 0.0;
    std::size_t chosen = members.size();
    for (std::size_t m = 0; m < members.size(); ++m) {
      cum += d2[m];
      if (cum > target) {
        chosen = m;
        break;
      }
    }
    if (chosen == members.size()) {
      // Numerical tail: fall back to the last member with positive weight.
      for (std::size_t m = members.size(); m-- > 0;) {
        if (d2[m] > 0.0) {
          chosen = m;
          break;
        }
      }
    }
    const auto x = features.features(members[chosen]);
    centroids.insert(centroids.end(), x.begin(), x.end());
  }
  return centroids;
}

}  // namespace

KMeansResult kmeans_fit(const FeatureTable& features, int class_label, std::size_t k,
                        std::optional<std::span<const double>> warm_centroids,
                        std::uint64_t seed, const KMeansOptions& options) {
  if (k == 0) {
    throw InvalidArgument("k must be >= 1");
  }
  const std::size_t dim = features.dim();

  // Members in sorted cell-index order; everything downstream iterates in
  // this order so results are independent of row order in the table.
  std::vector<std::size_t> members;
  for (std::size_t row : features.sorted_rows()) {
    if (features.class_label(row) == class_label) members.push_back(row);
  }
  if (members.empty()) {
    throw EmptyClassError("class " + std::to_string(class_label) + " has no cells");
  }

  KMeansResult result;
  result.member_cells.reserve(members.size());
  for (std::size_t row : members) result.member_cells.push_back(features.cell_index(row));

  if (warm_centroids) {
    if (warm_centroids->size() != k * dim) {
      throw InconsistentModelError("warm centroids have " +
                                   std::to_string(warm_centroids->size()) +
                                   " values, expected " + std::to_string(k * dim));
    }
    result.centroids.assign(warm_centroids->begin(), warm_centroids->end());
  } else {
    if (members.size() < k) {
      throw InsufficientPointsError("class " + std::to_string(class_label) + " has " +
                                    std::to_string(members.size()) + " cells, need >= " +
                                    std::to_string(k) + " for a cold start");
    }
    std::set<std::vector<double>> distinct;
    for (std::size_t row : members) {
      const auto x = features.features(row);
      distinct.emplace(x.begin(), x.end());
      if (distinct.size() >= k) break;
    }
    if (distinct.size() < k) {
      throw InsufficientPointsError("class " + std::to_string(class_label) +
                                    " has fewer than k distinct feature vectors");
    }
    Rng rng(Rng::derive_seed(seed, static_cast<std::uint64_t>(class_label)));
    result.centroids = plusplus_init(features, members, k, dim, rng);
  }

  result.assignments.assign(members.size(), 0);
  std::vector<double> member_d2(members.size(), 0.0);

  auto assign_all = [&] {
    parallel_for(members.size(), options.workers, [&](std::size_t m) {
      const auto x = features.features(members[m]);
      int best_c = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = sq_dist(x, result.centroids.data() + c * dim);
        if (d < best) {
          best = d;
          best_c = static_cast<int>(c);
        }
      }
      result.assignments[m] = best_c;
      member_d2[m] = best;
    });
    double inertia = 0.0;
    for (double d : member_d2) inertia += d;
    return inertia;
  };

  for (std::size_t iter = 0; iter < options.max_iters; ++iter) {
    result.inertia_history.push_back(assign_all());
    ++result.iterations;

    std::vector<double> sums(k * dim, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t m = 0; m < members.size(); ++m) {
      const auto x = features.features(members[m]);
      const std::size_t c = static_cast<std::size_t>(result.assignments[m]);
      ++counts[c];
      for (std::size_t d = 0; d < dim; ++d) sums[c * dim + d] += x[d];
    }

    double movement = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      double* centroid = result.centroids.data() + c * dim;
      if (counts[c] == 0) {
        // Re-seed a starved cluster at the member farthest from the
        // cluster's previous centroid.
        std::size_t farthest = 0;
        double best = -1.0;
        for (std::size_t m = 0; m < members.size(); ++m) {
          const double d = sq_dist(features.features(members[m]), centroid);
          if (d > best) {
            best = d;
            farthest = m;
          }
        }
        const auto x = features.features(members[farthest]);
        double move2 = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
          const double diff = x[d] - centroid[d];
          move2 += diff * diff;
          centroid[d] = x[d];
        }
        movement = std::max(movement, std::sqrt(move2));
        continue;
      }
      double move2 = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double mean = sums[c * dim + d] / static_cast<double>(counts[c]);
        const double diff = mean - centroid[d];
        move2 += diff * diff;
        centroid[d] = mean;
      }
      movement = std::max(movement, std::sqrt(move2));
    }

    if (movement < options.tol) break;
  }

  // Final pass so every member is assigned to its nearest final centroid.
  result.inertia_history.push_back(assign_all());
  return result;
}

int ClusterModel::subclass_of(std::int64_t cell) const {
  const auto it = std::lower_bound(cells.begin(), cells.end(), cell);
  if (it == cells.end() || *it != cell) {
    throw OutOfRangeError("cell " + std::to_string(cell) + " not in cluster model");
  }
  return subclasses[static_cast<std::size_t>(it - cells.begin())];
}

namespace {

// Z-score per dimension; constant dimensions are left untouched.
FeatureTable normalize_features(const FeatureTable& in) {
  const std::size_t n = in.size();
  const std::size_t dim = in.dim();
  std::vector<double> mean(dim, 0.0), var(dim, 0.0);
  for (std::size_t row : in.sorted_rows()) {
    const auto x = in.features(row);
    for (std::size_t d = 0; d < dim; ++d) mean[d] += x[d];
  }
  for (std::size_t d = 0; d < dim; ++d) mean[d] /= static_cast<double>(n);
  for (std::size_t row : in.sorted_rows()) {
    const auto x = in.features(row);
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = x[d] - mean[d];
      var[d] += diff * diff;
    }
  }
  std::vector<double> scale(dim, 1.0);
  for (std::size_t d = 0; d < dim; ++d) {
    const double sd = std::sqrt(var[d] / static_cast<double>(n));
    if (sd > 0.0) scale[d] = 1.0 / sd;
  }
  std::vector<std::int64_t> cells(n);
  std::vector<int> labels(n);
  std::vector<double> values(n * dim);
  for (std::size_t row = 0; row < n; ++row) {
    cells[row] = in.cell_index(row);
    labels[row] = in.class_label(row);
    const auto x = in.features(row);
    for (std::size_t d = 0; d < dim; ++d) {
      values[row * dim + d] = (x[d] - mean[d]) * scale[d];
    }
  }
  return FeatureTable(std::move(cells), std::move(labels), std::move(values), dim,
                      in.n_classes());
}

}  // namespace

ClusterModel update_pseudo_labels(const FeatureTable& features,
                                  const std::optional<ClusterModel>& previous, std::size_t k,
                                  std::uint64_t seed, const PseudoLabelOptions& options) {
  if (k == 0) {
    throw InvalidArgument("k must be >= 1");
  }
  if (features.size() == 0) {
    throw EmptyClassError("feature table is empty");
  }
  if (previous) {
    if (previous->dim != features.dim()) {
      throw InconsistentModelError("warm model dimension " + std::to_string(previous->dim) +
                                   " does not match features (" +
                                   std::to_string(features.dim()) + ")");
    }
    if (previous->k != k) {
      throw InconsistentModelError("warm model has k=" + std::to_string(previous->k) +
                                   ", requested k=" + std::to_string(k));
    }
    if (previous->n_classes != features.n_classes()) {
      throw InconsistentModelError("warm model class count does not match features");
    }
    if (previous->normalized != options.normalize) {
      throw InconsistentModelError("warm model normalization flag does not match options");
    }
  }

  const FeatureTable* table = &features;
  std::optional<FeatureTable> normalized;
  if (options.normalize) {
    normalized = normalize_features(features);
    table = &*normalized;
  }

  ClusterModel model;
  model.n_classes = features.n_classes();
  model.k = k;
  model.dim = features.dim();
  model.epoch = previous ? previous->epoch + 1 : 0;
  model.seed = seed;
  model.normalized = options.normalize;
  model.centroids.resize(static_cast<std::size_t>(model.n_classes));

  std::vector<std::pair<std::int64_t, int>> labeled;
  labeled.reserve(features.size());
  const KMeansOptions fit_options{options.max_iters, options.tol, options.workers};
  for (int cls = 0; cls < model.n_classes; ++cls) {
    std::optional<std::span<const double>> warm;
    if (previous) {
      warm = std::span<const double>(previous->centroids[static_cast<std::size_t>(cls)]);
    }
    KMeansResult fit = kmeans_fit(*table, cls, k, warm, seed, fit_options);
    model.centroids[static_cast<std::size_t>(cls)] = std::move(fit.centroids);
    for (std::size_t m = 0; m < fit.member_cells.size(); ++m) {
      labeled.emplace_back(fit.member_cells[m],
                           cls * static_cast<int>(k) + fit.assignments[m]);
    }
  }
  std::sort(labeled.begin(), labeled.end());
  model.cells.reserve(labeled.size());
  model.subclasses.reserve(labeled.size());
  for (const auto& [cell, sub] : labeled) {
    model.cells.push_back(cell);
    model.subclasses.push_back(sub);
  }
  return model;
}

RasterMap pseudo_label_masks(const ClusterModel& model, const RasterMap& detection_mask,
                             const PointPattern& pattern) {
  const ComponentLabeling labeling = label_components(detection_mask);
  const auto comp = map_annotations_to_components(pattern, detection_mask, labeling);

  std::vector<int> sub_of_component(labeling.n_components + 1, -1);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    try {
      sub_of_component[comp[i]] = model.subclass_of(static_cast<std::int64_t>(i));
    } catch (const OutOfRangeError&) {
      throw InconsistentInput("cluster model does not cover cell " + std::to_string(i));
    }
  }

  RasterMap out(detection_mask.height(), detection_mask.width(),
                static_cast<std::uint32_t>(model.n_classes * static_cast<int>(model.k)),
                Dtype::kU8);
  for (std::uint32_t y = 0; y < detection_mask.height(); ++y) {
    for (std::uint32_t x = 0; x < detection_mask.width(); ++x) {
      const std::size_t label = labeling.label_at(y, x);
      if (label == 0) continue;
      out.u8(y, x, static_cast<std::uint32_t>(sub_of_component[label])) = 1;
    }
  }
  return out;
}

void save_cluster_model(const ClusterModel& model, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["format_version"] = kFormatVersion;
  doc["n_classes"] = model.n_classes;
  doc["k"] = model.k;
  doc["dim"] = model.dim;
  doc["epoch"] = model.epoch;
  doc["seed"] = model.seed;
  doc["normalized"] = model.normalized;
  doc["centroids"] = nlohmann::json::array();
  for (const auto& per_class : model.centroids) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t c = 0; c * model.dim < per_class.size(); ++c) {
      rows.push_back(std::vector<double>(per_class.begin() + c * model.dim,
                                         per_class.begin() + (c + 1) * model.dim));
    }
    doc["centroids"].push_back(std::move(rows));
  }
  doc["cells"] = model.cells;
  doc["subclasses"] = model.subclasses;

  std::ofstream out(path);
  if (!out) {
    throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  }
  out << doc.dump(2) << "\n";
}

ClusterModel load_cluster_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open cluster model '" + path.string() + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("cluster model '" + path.string() + "': " + e.what());
  }
  try {
    if (doc.at("format_version").get<int>() != kFormatVersion) {
      throw VersionError("unsupported cluster model version in '" + path.string() + "'");
    }
    ClusterModel model;
    model.n_classes = doc.at("n_classes").get<int>();
    model.k = doc.at("k").get<std::size_t>();
    model.dim = doc.at("dim").get<std::size_t>();
    model.epoch = doc.at("epoch").get<std::size_t>();
    model.seed = doc.at("seed").get<std::uint64_t>();
    model.normalized = doc.at("normalized").get<bool>();
    for (const auto& rows : doc.at("centroids")) {
      std::vector<double> flat;
      for (const auto& row : rows) {
        for (const auto& v : row) flat.push_back(v.get<double>());
      }
      model.centroids.push_back(std::move(flat));
    }
    model.cells = doc.at("cells").get<std::vector<std::int64_t>>();
    model.subclasses = doc.at("subclasses").get<std::vector<int>>();
    if (model.centroids.size() != static_cast<std::size_t>(model.n_classes) ||
        model.cells.size() != model.subclasses.size()) {
      throw ParseError("cluster model '" + path.string() + "' has inconsistent arrays");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("cluster model '" + path.string() + "': " + e.what());
  }
}

}  // namespace spatk

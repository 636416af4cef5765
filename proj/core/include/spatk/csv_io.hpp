#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spatk/inference.hpp"
#include "spatk/k_vector.hpp"
#include "spatk/kmeans.hpp"
#include "spatk/point_pattern.hpp"

namespace spatk {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// `path` with its extension replaced by ".json"; where a pattern CSV's
/// window sidecar lives.
std::filesystem::path window_sidecar_path(const std::filesystem::path& csv_path);

/// Pattern CSV: header `x,y,class`, one row per point, 0-based classes.
/// The window and class count travel in the sidecar JSON
/// {"x0":..,"y0":..,"width":..,"height":..,"n_classes":..}.
void save_pattern_csv(const PointPattern& pattern, const std::filesystem::path& csv_path,
                      bool write_sidecar = true);
PointPattern load_pattern_csv(const std::filesystem::path& csv_path);
PointPattern load_pattern_csv(const std::filesystem::path& csv_path, const Window& window,
                              int n_classes);

void save_window_json(const Window& window, int n_classes,
                      const std::filesystem::path& path);
std::pair<Window, int> load_window_json(const std::filesystem::path& path);

/// Feature table CSV: header `cell_index,class,f0,...,fD-1`.
void save_feature_csv(const FeatureTable& features, const std::filesystem::path& path);
FeatureTable load_feature_csv(const std::filesystem::path& path);

/// Predictions CSV: header `x,y,class,size`.
void save_predictions_csv(const std::vector<Prediction>& preds,
                          const std::filesystem::path& path);
std::vector<Prediction> load_predictions_csv(const std::filesystem::path& path);

/// K-vector field CSV: `cell_index,x,y,class` then one `k<c>_r<r>` column
/// per (class, radius) entry.
void save_k_vector_csv(const PointPattern& pattern, const std::vector<KVector>& field,
                       const std::filesystem::path& path);

}  // namespace spatk

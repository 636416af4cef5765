#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spatk/inference.hpp"
#include "spatk/point_pattern.hpp"

namespace spatk {

/// One-to-one point matching: greedy over candidate pairs with d <= radius
/// in ascending (distance, gt index, pred index) order.
struct Matching {
  struct Pair {
    std::size_t pred = 0;
    std::size_t gt = 0;
    double distance = 0.0;
  };
  std::vector<Pair> pairs;
  std::vector<std::size_t> unmatched_pred;
  std::vector<std::size_t> unmatched_gt;
};

Matching match_points(const std::vector<Point>& pred, const std::vector<Point>& gt,
                      double radius);

struct ClassScore {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
};

/// All zero-denominator scores are defined as 0.
ClassScore score_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

struct EvalReport {
  ClassScore detection;               // class-agnostic matching
  std::vector<ClassScore> per_class;  // class-restricted matchings
  double mean_f = 0.0;                // arithmetic mean over classes
};

/// Detection scores from class-agnostic matching, per-class scores from
/// matching restricted to that class, within `radius` pixels.
EvalReport evaluate(const std::vector<Prediction>& preds, const PointPattern& gt,
                    double radius = 6.0);

/// Pools raw TP/FP/FN across reports before recomputing scores
/// (micro-average). Reports must agree on the class count.
EvalReport merge_micro(const std::vector<EvalReport>& reports);

/// Averages the scores of per-patch reports (macro-average).
EvalReport merge_macro(const std::vector<EvalReport>& reports);

std::string report_to_json(const EvalReport& report);

}  // namespace spatk

#include "spatk/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "spatk/errors.hpp"

namespace spatk {

Matching match_points(const std::vector<Point>& pred, const std::vector<Point>& gt,
                      double radius) {
  if (!(radius > 0.0)) {
    throw InvalidArgument("match radius must be positive");
  }
  struct Candidate {
    double distance;
    std::size_t gt;
    std::size_t pred;
  };
  std::vector<Candidate> candidates;
  const double r2 = radius * radius;
  for (std::size_t g = 0; g < gt.size(); ++g) {
    for (std::size_t p = 0; p < pred.size(); ++p) {
      const double d2 = squared_distance(pred[p].x, pred[p].y, gt[g].x, gt[g].y);
      if (d2 <= r2) {
        candidates.push_back({std::sqrt(d2), g, p});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.gt != b.gt) return a.gt < b.gt;
    return a.pred < b.pred;
  });

  Matching matching;
  std::vector<bool> pred_used(pred.size(), false);
  std::vector<bool> gt_used(gt.size(), false);
  for (const Candidate& c : candidates) {
    if (pred_used[c.pred] || gt_used[c.gt]) continue;
    pred_used[c.pred] = true;
    gt_used[c.gt] = true;
    matching.pairs.push_back({c.pred, c.gt, c.distance});
  }
  for (std::size_t p = 0; p < pred.size(); ++p) {
    if (!pred_used[p]) matching.unmatched_pred.push_back(p);
  }
  for (std::size_t g = 0; g < gt.size(); ++g) {
    if (!gt_used[g]) matching.unmatched_gt.push_back(g);
  }
  return matching;
}

ClassScore score_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  ClassScore s;
  s.tp = tp;
  s.fp = fp;
  s.fn = fn;
  const double tpd = static_cast<double>(tp);
  s.precision = tp + fp == 0 ? 0.0 : tpd / static_cast<double>(tp + fp);
  s.recall = tp + fn == 0 ? 0.0 : tpd / static_cast<double>(tp + fn);
  s.f_score = s.precision + s.recall == 0.0
                  ? 0.0
                  : 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

EvalReport evaluate(const std::vector<Prediction>& preds, const PointPattern& gt,
                    double radius) {
  for (const Prediction& p : preds) {
    if (p.class_label < 0 || p.class_label >= gt.n_classes()) {
      throw InvalidArgument("prediction class " + std::to_string(p.class_label) +
                            " outside the ground truth's class range");
    }
  }

  EvalReport report;

  std::vector<Point> pred_points(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) pred_points[i] = preds[i].point;
  std::vector<Point> gt_points(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i) gt_points[i] = gt.point(i);

  const Matching detection = match_points(pred_points, gt_points, radius);
  report.detection = score_from_counts(detection.pairs.size(), detection.unmatched_pred.size(),
                                       detection.unmatched_gt.size());

  double f_total = 0.0;
  for (int cls = 0; cls < gt.n_classes(); ++cls) {
    std::vector<Point> cls_pred;
    for (const Prediction& p : preds) {
      if (p.class_label == cls) cls_pred.push_back(p.point);
    }
    std::vector<Point> cls_gt;
    for (std::size_t i = 0; i < gt.size(); ++i) {
      if (gt.label(i) == cls) cls_gt.push_back(gt.point(i));
    }
    const Matching m = match_points(cls_pred, cls_gt, radius);
    const ClassScore score =
        score_from_counts(m.pairs.size(), m.unmatched_pred.size(), m.unmatched_gt.size());
    report.per_class.push_back(score);
    f_total += score.f_score;
  }
  report.mean_f = f_total / static_cast<double>(gt.n_classes());
  return report;
}

namespace {

void check_reports(const std::vector<EvalReport>& reports) {
  if (reports.empty()) {
    throw InvalidArgument("cannot merge zero reports");
  }
  for (const EvalReport& r : reports) {
    if (r.per_class.size() != reports[0].per_class.size()) {
      throw InconsistentInput("reports have different class counts");
    }
  }
}

}  // namespace

EvalReport merge_micro(const std::vector<EvalReport>& reports) {
  check_reports(reports);
  const std::size_t n_classes = reports[0].per_class.size();
  EvalReport out;
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const EvalReport& r : reports) {
    tp += r.detection.tp;
    fp += r.detection.fp;
    fn += r.detection.fn;
  }
  out.detection = score_from_counts(tp, fp, fn);
  double f_total = 0.0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    tp = fp = fn = 0;
    for (const EvalReport& r : reports) {
      tp += r.per_class[c].tp;
      fp += r.per_class[c].fp;
      fn += r.per_class[c].fn;
    }
    out.per_class.push_back(score_from_counts(tp, fp, fn));
    f_total += out.per_class.back().f_score;
  }
  out.mean_f = f_total / static_cast<double>(n_classes);
  return out;
}

EvalReport merge_macro(const std::vector<EvalReport>& reports) {
  check_reports(reports);
  const std::size_t n_classes = reports[0].per_class.size();
  const double n = static_cast<double>(reports.size());
  EvalReport out;
  out.per_class.resize(n_classes);
  for (const EvalReport& r : reports) {
    out.detection.tp += r.detection.tp;
    out.detection.fp += r.detection.fp;
    out.detection.fn += r.detection.fn;
    out.detection.precision += r.detection.precision / n;
    out.detection.recall += r.detection.recall / n;
    out.detection.f_score += r.detection.f_score / n;
    out.mean_f += r.mean_f / n;
    for (std::size_t c = 0; c < n_classes; ++c) {
      out.per_class[c].tp += r.per_class[c].tp;
      out.per_class[c].fp += r.per_class[c].fp;
      out.per_class[c].fn += r.per_class[c].fn;
      out.per_class[c].precision += r.per_class[c].precision / n;
      out.per_class[c].recall += r.per_class[c].recall / n;
      out.per_class[c].f_score += r.per_class[c].f_score / n;
    }
  }
  return out;
}

std::string report_to_json(const EvalReport& report) {
  auto score_json = [](const ClassScore& s) {
    return nlohmann::json{{"tp", s.tp},           {"fp", s.fp},
                          {"fn", s.fn},           {"precision", s.precision},
                          {"recall", s.recall},   {"f_score", s.f_score}};
  };
  nlohmann::json doc;
  doc["detection"] = score_json(report.detection);
  doc["per_class"] = nlohmann::json::array();
  for (const ClassScore& s : report.per_class) doc["per_class"].push_back(score_json(s));
  doc["mean_f"] = report.mean_f;
  return doc.dump(2) + "\n";
}

}  // namespace spatk

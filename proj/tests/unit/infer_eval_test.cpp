#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "spatk/components.hpp"
#include "spatk/errors.hpp"
#include "spatk/evaluation.hpp"
#include "spatk/inference.hpp"
#include "spatk/random.hpp"
#include "synthetic.hpp"

using namespace spatk;
using namespace spatk::testing;

TEST_SUITE("infer_eval") {

TEST_CASE("labeling basics") {
  RasterMap zero(30, 30, 1, Dtype::kU8);
  CHECK(label_components(zero).n_components == 0);

  RasterMap square(40, 40, 1, Dtype::kU8);
  for (std::uint32_t y = 20; y <= 22; ++y) {
    for (std::uint32_t x = 10; x <= 12; ++x) square.u8(y, x) = 1;
  }
  const ComponentLabeling l = label_components(square);
  REQUIRE(l.n_components == 1);
  CHECK(l.sizes[0] == 9);
  CHECK(l.centroids[0].x == 11.0);
  CHECK(l.centroids[0].y == 21.0);

  RasterMap multi(10, 10, 2, Dtype::kU8);
  CHECK_THROWS_AS(label_components(multi), InvalidArgument);
}

TEST_CASE("diagonal pixels join one component") {
  RasterMap diag(10, 10, 1, Dtype::kU8);
  diag.u8(2, 2) = 1;
  diag.u8(3, 3) = 1;
  diag.u8(4, 4) = 1;
  CHECK(label_components(diag).n_components == 1);
}

TEST_CASE("labeling agrees with the union-find oracle") {
  Rng rng(271);
  for (int trial = 0; trial < 10; ++trial) {
    RasterMap mask(60, 60, 1, Dtype::kU8);
    for (std::uint32_t y = 0; y < 60; ++y) {
      for (std::uint32_t x = 0; x < 60; ++x) {
        mask.u8(y, x) = rng.next_double() < 0.35 ? 1 : 0;
      }
    }
    const ComponentLabeling fast = label_components(mask);
    const UnionFindLabeling slow = union_find_components(mask);
    REQUIRE(fast.n_components == slow.n_components);
    // Same partition: label pairs must map 1:1 (both first-encounter order).
    std::vector<double> sizes_fast(fast.sizes.begin(), fast.sizes.end());
    for (std::uint32_t y = 0; y < 60; ++y) {
      for (std::uint32_t x = 0; x < 60; ++x) {
        const std::size_t at = static_cast<std::size_t>(y) * 60 + x;
        const std::size_t a = fast.label_at(y, x);
        const auto b = slow.component_of[at];
        CHECK((a == 0) == (b < 0));
        if (a != 0) CHECK(fast.sizes[a - 1] == slow.sizes[static_cast<std::size_t>(b)]);
      }
    }
  }
}

TEST_CASE("extraction thresholds and minimum size") {
  RasterMap flat(20, 20, 1, Dtype::kF32);
  for (auto& v : flat.f32_values()) v = 0.3f;
  RasterMap classes(20, 20, 2, Dtype::kF32);
  CHECK(extract_cells(flat, classes, 0.5, 5).empty());

  // A 4-pixel blob is dropped at min_size 5, kept at 4.
  RasterMap small(20, 20, 1, Dtype::kF32);
  small.f32(5, 5) = 1.0f;
  small.f32(5, 6) = 1.0f;
  small.f32(6, 5) = 1.0f;
  small.f32(6, 6) = 1.0f;
  CHECK(extract_cells(small, classes, 0.5, 5).empty());
  CHECK(extract_cells(small, classes, 0.5, 4).size() == 1);

  // Threshold is inclusive.
  RasterMap edge(10, 10, 1, Dtype::kF32);
  for (std::uint32_t y = 0; y <= 2; ++y) {
    for (std::uint32_t x = 0; x <= 2; ++x) edge.f32(y, x) = 0.5f;
  }
  RasterMap edge_cls(10, 10, 1, Dtype::kF32);
  CHECK(extract_cells(edge, edge_cls, 0.5, 5).size() == 1);

  CHECK_THROWS_AS(extract_cells(flat, RasterMap(5, 5, 1, Dtype::kF32), 0.5, 5),
                  InvalidArgument);
  CHECK_THROWS_AS(extract_cells(flat, classes, 0.0, 5), InvalidArgument);
}

TEST_CASE("planted blobs come back with their classes") {
  Rng rng(281);
  const int n_blobs = 10;
  RasterMap likelihood(200, 200, 1, Dtype::kF32);
  RasterMap classes(200, 200, 3, Dtype::kF32);
  std::vector<Point> planted;
  std::vector<int> planted_class;
  for (int b = 0; b < n_blobs; ++b) {
    const auto cx = static_cast<std::uint32_t>(20 + 36 * (b % 5));
    const auto cy = static_cast<std::uint32_t>(40 + 60 * (b / 5));
    const int cls = static_cast<int>(rng.uniform_index(3));
    for (std::int64_t dy = -2; dy <= 2; ++dy) {
      for (std::int64_t dx = -2; dx <= 2; ++dx) {
        likelihood.f32(static_cast<std::uint32_t>(cy + dy),
                       static_cast<std::uint32_t>(cx + dx)) = 0.9f;
      }
    }
    for (std::uint32_t c = 0; c < 3; ++c) {
      classes.f32(cy, cx, c) = c == static_cast<std::uint32_t>(cls) ? 0.8f : 0.1f;
    }
    planted.push_back({static_cast<double>(cx), static_cast<double>(cy)});
    planted_class.push_back(cls);
  }
  const auto cells = extract_cells(likelihood, classes, 0.5, 5);
  REQUIRE(cells.size() == static_cast<std::size_t>(n_blobs));
  for (const Prediction& p : cells) {
    // Each prediction lands exactly on a planted center (5x5 squares).
    bool found = false;
    for (std::size_t b = 0; b < planted.size(); ++b) {
      if (p.point.x == planted[b].x && p.point.y == planted[b].y) {
        CHECK(p.class_label == planted_class[b]);
        CHECK(p.size == 25);
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("greedy matching on the worked example") {
  const std::vector<Point> pred{{0, 0}, {10, 10}};
  const std::vector<Point> gt{{0, 5}, {50, 50}};
  const Matching m = match_points(pred, gt, 6.0);
  REQUIRE(m.pairs.size() == 1);
  CHECK(m.pairs[0].pred == 0);
  CHECK(m.pairs[0].gt == 0);
  CHECK(m.pairs[0].distance == 5.0);
  REQUIRE(m.unmatched_pred.size() == 1);
  CHECK(m.unmatched_pred[0] == 1);
  REQUIRE(m.unmatched_gt.size() == 1);
  CHECK(m.unmatched_gt[0] == 1);
}

TEST_CASE("identical lists match perfectly") {
  Rng rng(291);
  std::vector<Point> pts;
  for (int i = 0; i < 40; ++i) pts.push_back({rng.uniform(0, 100), rng.uniform(0, 100)});
  const Matching m = match_points(pts, pts, 6.0);
  CHECK(m.pairs.size() == pts.size());
  CHECK(m.unmatched_pred.empty());
  CHECK(m.unmatched_gt.empty());
  for (const auto& pair : m.pairs) CHECK(pair.distance == 0.0);
}

TEST_CASE("matching radius is inclusive and matching is one-to-one") {
  const std::vector<Point> pred{{0, 0}};
  const std::vector<Point> gt{{6, 0}};
  CHECK(match_points(pred, gt, 6.0).pairs.size() == 1);  // d == radius accepted

  Rng rng(301);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> p, g;
    const std::size_t np = rng.uniform_index(9);
    const std::size_t ng = rng.uniform_index(9);
    for (std::size_t i = 0; i < np; ++i) p.push_back({rng.uniform(0, 30), rng.uniform(0, 30)});
    for (std::size_t i = 0; i < ng; ++i) g.push_back({rng.uniform(0, 30), rng.uniform(0, 30)});
    const Matching m = match_points(p, g, 6.0);
    std::set<std::size_t> used_p, used_g;
    for (const auto& pair : m.pairs) {
      CHECK(pair.distance <= 6.0);
      CHECK(used_p.insert(pair.pred).second);
      CHECK(used_g.insert(pair.gt).second);
    }
    CHECK(m.pairs.size() + m.unmatched_pred.size() == p.size());
    CHECK(m.pairs.size() + m.unmatched_gt.size() == g.size());
    // Greedy can only be at or below the optimal cardinality.
    CHECK(m.pairs.size() <= optimal_matching_size(p, g, 6.0));
  }
}

TEST_CASE("evaluation of perfect predictions") {
  const PointPattern gt = random_pattern(60, {0, 0, 200, 200}, 3, 311);
  std::vector<Prediction> preds;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    preds.push_back({gt.point(i), gt.label(i), 9});
  }
  const EvalReport r = evaluate(preds, gt, 6.0);
  CHECK(r.detection.f_score == 1.0);
  CHECK(r.mean_f == 1.0);
  for (const ClassScore& s : r.per_class) {
    CHECK(s.f_score == 1.0);
    CHECK(s.fp == 0);
    CHECK(s.fn == 0);
  }
}

TEST_CASE("no predictions scores zero") {
  const PointPattern gt = random_pattern(20, {0, 0, 100, 100}, 2, 321);
  const EvalReport r = evaluate({}, gt, 6.0);
  CHECK(r.detection.precision == 0.0);
  CHECK(r.detection.recall == 0.0);
  CHECK(r.detection.f_score == 0.0);
  CHECK(r.mean_f == 0.0);
  CHECK(r.detection.fn == gt.size());
}

TEST_CASE("sub-radius jitter keeps all scores at one") {
  const PointPattern gt = random_pattern_min_dist(80, {10, 10, 400, 400}, 3, 331, 15.0);
  Rng rng(341);
  std::vector<Prediction> preds;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const double angle = rng.uniform(0, 2 * 3.14159);
    const double radius = rng.uniform(0, 5.5);
    preds.push_back({{gt.x(i) + radius * std::cos(angle), gt.y(i) + radius * std::sin(angle)},
                     gt.label(i), 9});
  }
  const EvalReport r = evaluate(preds, gt, 6.0);
  CHECK(r.detection.f_score == 1.0);
  CHECK(r.mean_f == 1.0);
}

TEST_CASE("worked eval example scores one half") {
  const PointPattern gt({0.0, 50.0}, {5.0, 50.0}, {0, 0}, {0, 0, 100, 100}, 1);
  const std::vector<Prediction> preds{{{0, 0}, 0, 9}, {{10, 10}, 0, 9}};
  const EvalReport r = evaluate(preds, gt, 6.0);
  CHECK(r.detection.precision == 0.5);
  CHECK(r.detection.recall == 0.5);
  CHECK(r.detection.f_score == 0.5);
}

TEST_CASE("evaluation is permutation invariant and class-consistent") {
  const PointPattern gt = random_pattern(50, {0, 0, 150, 150}, 3, 351);
  Rng rng(361);
  std::vector<Prediction> preds;
  for (int i = 0; i < 45; ++i) {
    preds.push_back({{rng.uniform(0, 150), rng.uniform(0, 150)},
                     static_cast<int>(rng.uniform_index(3)), 7});
  }
  const EvalReport a = evaluate(preds, gt, 6.0);

  std::vector<Prediction> shuffled = preds;
  for (std::size_t i = shuffled.size(); i > 1; --i) {
    std::swap(shuffled[i - 1], shuffled[rng.uniform_index(i)]);
  }
  const EvalReport b = evaluate(shuffled, gt, 6.0);
  CHECK(a.detection.tp == b.detection.tp);
  CHECK(a.mean_f == b.mean_f);
  for (int c = 0; c < 3; ++c) {
    CHECK(a.per_class[c].tp == b.per_class[c].tp);
    CHECK(a.per_class[c].f_score == b.per_class[c].f_score);
  }

  // Class-agnostic matching can only match more.
  std::size_t class_tp = 0;
  for (const auto& s : a.per_class) class_tp += s.tp;
  CHECK(a.detection.tp >= class_tp);

  CHECK(a.detection.tp + a.detection.fn == gt.size());
  CHECK(a.detection.tp + a.detection.fp == preds.size());

  std::vector<Prediction> bad{{{1, 1}, 7, 5}};
  CHECK_THROWS_AS(evaluate(bad, gt, 6.0), InvalidArgument);
}

TEST_CASE("micro and macro merges") {
  const PointPattern gt1 = random_pattern(30, {0, 0, 100, 100}, 2, 371);
  const PointPattern gt2 = random_pattern(40, {0, 0, 100, 100}, 2, 381);
  std::vector<Prediction> perfect1, none;
  for (std::size_t i = 0; i < gt1.size(); ++i) {
    perfect1.push_back({gt1.point(i), gt1.label(i), 9});
  }
  const EvalReport r1 = evaluate(perfect1, gt1, 6.0);
  const EvalReport r2 = evaluate(none, gt2, 6.0);

  const EvalReport micro = merge_micro({r1, r2});
  CHECK(micro.detection.tp == gt1.size());
  CHECK(micro.detection.fn == gt2.size());
  CHECK(micro.detection.precision == 1.0);
  CHECK(micro.detection.recall == doctest::Approx(30.0 / 70.0));

  const EvalReport macro = merge_macro({r1, r2});
  CHECK(macro.detection.f_score == doctest::Approx(0.5));
  CHECK(macro.mean_f == doctest::Approx(0.5));

  CHECK_THROWS_AS(merge_micro({}), InvalidArgument);
}

}  // TEST_SUITE

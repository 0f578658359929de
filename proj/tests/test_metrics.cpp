#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "maskresize/metrics.hpp"
#include "maskresize/rng.hpp"

#include "generators.hpp"
#include "oracles.hpp"

using namespace maskresize;
using metrics::BFTolerance;
using metrics::ConfusionMatrix;
using metrics::Score;

namespace {

bool score_eq(const Score& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}

bool score_close(const Score& a, const std::optional<double>& b, double tol) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::abs(*a - *b) <= tol;
}

}  // namespace

TEST_CASE("confusion matrix counts by hand") {
  const LabelSet set = LabelSet::default_three_class();
  const LabelMask gt({2, 2}, {255, 128, 0, 0}, set);
  const LabelMask pred({2, 2}, {255, 0, 0, 128}, set);
  const ConfusionMatrix cm = metrics::confusion(pred, gt);

  CHECK(cm.at(0, 0) == 1);  // gt 255 -> pred 255
  CHECK(cm.at(1, 2) == 1);  // gt 128 -> pred 0
  CHECK(cm.at(2, 2) == 1);  // gt 0   -> pred 0
  CHECK(cm.at(2, 1) == 1);  // gt 0   -> pred 128
  CHECK(cm.total() == 4);
  CHECK(cm.trace() == 2);
  CHECK(cm.row_sum(2) == 2);
  CHECK(cm.col_sum(2) == 2);

  ConfusionMatrix pooled = cm;
  pooled.merge(cm);
  CHECK(pooled.total() == 8);
  CHECK(pooled.at(2, 1) == 2);

  const LabelMask other_size({2, 1}, {255, 0}, set);
  CHECK_THROWS_AS(metrics::confusion(other_size, gt), std::invalid_argument);
}

TEST_CASE("metrics match the brute-force evaluator on random pairs") {
  const LabelSet set = LabelSet::default_three_class();
  Rng rng(67);
  for (int round = 0; round < 500; ++round) {
    const LabelMask gt = generators::random_mask(rng, {4, 4}, set);
    const LabelMask pred = generators::random_mask(rng, {4, 4}, set);
    const ConfusionMatrix cm = metrics::confusion(pred, gt);
    const metrics::AggregateScores agg = metrics::aggregate(cm);

    for (int label : set.labels()) {
      CHECK(score_eq(metrics::class_accuracy(cm, label),
                     oracles::brute_accuracy(pred, gt, label)));
      CHECK(score_eq(metrics::class_iou(cm, label), oracles::brute_iou(pred, gt, label)));
    }
    CHECK(score_eq(agg.global_accuracy, oracles::brute_global_accuracy(pred, gt)));
    CHECK(score_eq(agg.mean_accuracy, oracles::brute_mean_accuracy(pred, gt)));
    CHECK(score_eq(agg.mean_iou, oracles::brute_mean_iou(pred, gt)));
    CHECK(score_eq(agg.weighted_iou, oracles::brute_weighted_iou(pred, gt)));

    for (double tol : {1.0, 2.0}) {
      const BFTolerance budget{tol};
      for (int label : set.labels()) {
        CHECK(score_close(metrics::bf_score(pred, gt, label, budget),
                          oracles::brute_bf(pred, gt, label, tol), 1e-12));
      }
      CHECK(score_close(metrics::mean_bf(pred, gt, budget),
                        oracles::brute_mean_bf(pred, gt, tol), 1e-12));
    }
  }
}

TEST_CASE("perfect prediction scores ones") {
  const LabelSet set = LabelSet::default_three_class();
  Rng rng(71);
  const LabelMask gt = generators::random_mask(rng, {8, 8}, set);
  const metrics::MetricsReport report = metrics::evaluate(gt, gt);
  CHECK(report.global_accuracy == Score{1.0});
  CHECK(report.mean_accuracy == Score{1.0});
  CHECK(report.mean_iou == Score{1.0});
  CHECK(report.weighted_iou == Score{1.0});
  CHECK(report.mean_bf == Score{1.0});
}

TEST_CASE("undefined scores mark absent classes") {
  const LabelSet set = LabelSet::default_three_class();
  const LabelMask all_bg = LabelMask::filled({4, 4}, set);
  const metrics::MetricsReport report = metrics::evaluate(all_bg, all_bg);

  CHECK(report.global_accuracy == Score{1.0});
  // Foreground classes exist in neither raster.
  CHECK_FALSE(report.per_class_accuracy[0]);
  CHECK_FALSE(report.per_class_accuracy[1]);
  CHECK(report.per_class_accuracy[2] == Score{1.0});
  CHECK_FALSE(report.per_class_iou[0]);
  CHECK_FALSE(report.per_class_bf[0]);
  // Means cover only the defined entries.
  CHECK(report.mean_accuracy == Score{1.0});
  CHECK(report.mean_iou == Score{1.0});
  CHECK(report.mean_bf == Score{1.0});
}

TEST_CASE("bf score by hand") {
  const LabelSet set({255, 0}, 0);
  // gt: 2x2 block at x in [1,2]; pred: same block shifted right by 1.
  //   gt rows: 0 1 1 0 0        pred rows: 0 0 1 1 0
  std::vector<int> gt_labels(5 * 2, 0), pred_labels(5 * 2, 0);
  for (int y = 0; y < 2; ++y) {
    gt_labels[y * 5 + 1] = gt_labels[y * 5 + 2] = 255;
    pred_labels[y * 5 + 2] = pred_labels[y * 5 + 3] = 255;
  }
  const LabelMask gt({5, 2}, gt_labels, set);
  const LabelMask pred({5, 2}, pred_labels, set);

  // Blocks of four overlap in one column: IoU = 2 / (4 + 4 - 2).
  CHECK(metrics::class_iou(metrics::confusion(pred, gt), 255) == Score{1.0 / 3.0});

  // Every block pixel borders a different label or the edge, so all four
  // pixels of each block are boundary; a shift of one is within tolerance 1.
  CHECK(metrics::bf_score(pred, gt, 255, BFTolerance{1.0}) == Score{1.0});

  // Sub-pixel tolerance keeps only the shared column within reach.
  const Score tight = metrics::bf_score(pred, gt, 255, BFTolerance{0.5});
  REQUIRE(tight.has_value());
  CHECK(*tight == doctest::Approx(0.5).epsilon(1e-12));

  const LabelMask empty = LabelMask::filled({5, 2}, set);
  CHECK_FALSE(metrics::bf_score(empty, empty, 255).has_value());
  CHECK(metrics::bf_score(empty, gt, 255) == Score{0.0});
  CHECK(metrics::bf_score(gt, empty, 255) == Score{0.0});
}

TEST_CASE("default bf tolerance derives from the diagonal") {
  CHECK(BFTolerance{}.resolve({4, 4}) == 1.0);  // floor kicks in
  const double diag = std::hypot(800.0, 600.0);
  CHECK(BFTolerance{}.resolve({800, 600}) == doctest::Approx(0.0075 * diag).epsilon(1e-15));
  CHECK(BFTolerance{2.5}.resolve({800, 600}) == 2.5);
}

TEST_CASE("aggregate rejects an empty matrix") {
  CHECK_THROWS_AS(metrics::aggregate(ConfusionMatrix(LabelSet::default_three_class())),
                  std::invalid_argument);
}

TEST_CASE("percentage increase reproduces published ratios") {
  for (double b : {0.25, 0.5, 0.9146, 1.0}) {
    const Score first = metrics::percentage_increase(1.083127 * b, b);
    REQUIRE(first.has_value());
    CHECK(std::abs(*first - 8.3127) <= 1e-6);

    const Score second = metrics::percentage_increase(1.089578 * b, b);
    REQUIRE(second.has_value());
    CHECK(std::abs(*second - 8.9578) <= 1e-6);

    const Score third = metrics::percentage_increase(1.010496 * b, b);
    REQUIRE(third.has_value());
    CHECK(std::abs(*third - 1.0496) <= 1e-6);
  }
}

TEST_CASE("percentage increase sign and zero properties") {
  Rng rng(73);
  for (int round = 0; round < 1000; ++round) {
    const double b = rng.uniform_real(0.01, 1.0);
    const double a = rng.uniform_real(0.0, 1.0);
    const Score s = metrics::percentage_increase(a, b);
    REQUIRE(s.has_value());
    CHECK((a > b) == (*s > 0.0));
    CHECK((a < b) == (*s < 0.0));
  }
  CHECK(metrics::percentage_increase(0.7, 0.7) == Score{0.0});
  CHECK_FALSE(metrics::percentage_increase(0.5, 0.0).has_value());
  CHECK_FALSE(metrics::percentage_increase(Score{}, Score{0.5}).has_value());
  CHECK_FALSE(metrics::percentage_increase(Score{0.5}, Score{}).has_value());
  CHECK(metrics::percentage_increase(Score{0.6}, Score{0.5}).has_value());
}

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maskresize/raster.hpp"

namespace maskresize::metrics {

// A score is undefined (nullopt) when its denominator vanishes, e.g. the
// class is absent from both rasters. Undefined scores are excluded from
// means rather than treated as 0 or 1.
using Score = std::optional<double>;

// k x k pixel-count table: counts[gt][pred], indexed in label-set priority
// order. Merging is associative and commutative, so per-image matrices can
// be accumulated in any grouping.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(LabelSet labels);

  const LabelSet& labels() const { return labels_; }
  std::uint64_t at(int gt_index, int pred_index) const;
  void add(int gt_index, int pred_index, std::uint64_t n = 1);

  std::uint64_t total() const;
  std::uint64_t trace() const;
  std::uint64_t row_sum(int gt_index) const;   // pixels of ground-truth class
  std::uint64_t col_sum(int pred_index) const; // pixels predicted as class

  void merge(const ConfusionMatrix& other);

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  LabelSet labels_;
  std::vector<std::uint64_t> counts_;
};

// counts[i][j] = pixels with ground-truth label i predicted as label j.
// Masks must agree on size and label set.
ConfusionMatrix confusion(const LabelMask& pred, const LabelMask& gt);

// Recall of the class: diagonal / ground-truth row sum.
Score class_accuracy(const ConfusionMatrix& cm, int label);

// Intersection over union: diagonal / (row + col - diagonal).
Score class_iou(const ConfusionMatrix& cm, int label);

struct AggregateScores {
  Score global_accuracy;  // trace / total
  Score mean_accuracy;    // unweighted mean of defined class accuracies
  Score mean_iou;         // unweighted mean of defined class IoUs
  Score weighted_iou;     // class IoUs weighted by ground-truth frequency
};

// Throws std::invalid_argument on an empty matrix.
AggregateScores aggregate(const ConfusionMatrix& cm);

// Boundary-match distance budget in pixels. When not set explicitly the
// threshold derives from the raster: max(1, 0.75% of the image diagonal).
struct BFTolerance {
  std::optional<double> pixels;
  double resolve(Size size) const;
};

// Boundary F1: a pixel of the class is boundary when it sits on the raster
// edge or any 4-neighbor holds a different label. Precision is the fraction
// of predicted boundary pixels within the tolerance (Euclidean) of some
// ground-truth boundary pixel; recall is symmetric; the score is their
// harmonic mean. Undefined when the class has no boundary in either raster.
Score bf_score(const LabelMask& pred, const LabelMask& gt, int label,
               const BFTolerance& tol = {});

// Unweighted mean of the defined per-class BF scores.
Score mean_bf(const LabelMask& pred, const LabelMask& gt, const BFTolerance& tol = {});

// Every score family over one prediction/ground-truth pair, per label in
// label-set order plus the aggregate row.
struct MetricsReport {
  std::vector<Score> per_class_accuracy;
  std::vector<Score> per_class_iou;
  std::vector<Score> per_class_bf;
  Score global_accuracy;
  Score mean_accuracy;
  Score mean_iou;
  Score weighted_iou;
  Score mean_bf;

  bool operator==(const MetricsReport&) const = default;
};

MetricsReport evaluate(const LabelMask& pred, const LabelMask& gt,
                       const BFTolerance& tol = {});

// (a - b) / b * 100. Negative when a < b; undefined when b == 0 or either
// input is undefined.
Score percentage_increase(double a, double b);
Score percentage_increase(const Score& a, const Score& b);

}  // namespace maskresize::metrics

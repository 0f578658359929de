#include "maskresize/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace maskresize::metrics {

namespace {

int require_label(const LabelSet& set, int label) {
  const int idx = set.index_of(label);
  if (idx < 0) {
    throw std::invalid_argument("label " + std::to_string(label) +
                                " is not a member of the label set");
  }
  return idx;
}

void require_comparable(const LabelMask& pred, const LabelMask& gt) {
  if (!(pred.size() == gt.size())) {
    throw std::invalid_argument("prediction and ground truth sizes differ");
  }
  if (!(pred.label_set() == gt.label_set())) {
    throw std::invalid_argument("prediction and ground truth label sets differ");
  }
}

// Boundary pixels of one class: raster-edge membership or any differing
// 4-neighbor. Returned in scan order as (x, y) pairs.
std::vector<std::pair<int, int>> boundary_pixels(const LabelMask& mask, int label) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<std::pair<int, int>> out;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (mask.at(x, y) != label) continue;
      const bool edge = x == 0 || y == 0 || x == w - 1 || y == h - 1;
      if (edge || mask.at(x - 1, y) != label || mask.at(x + 1, y) != label ||
          mask.at(x, y - 1) != label || mask.at(x, y + 1) != label) {
        out.emplace_back(x, y);
      }
    }
  }
  return out;
}

// Fraction of `from` pixels with a `to` pixel within the squared distance
// budget. Integer squared distances keep the comparison exact.
double matched_fraction(const std::vector<std::pair<int, int>>& from,
                        const std::vector<std::pair<int, int>>& to, int height,
                        double tol_sq) {
  // Bucket target pixels by row; boundary matches are local.
  std::vector<std::vector<int>> xs_by_row(static_cast<size_t>(height));
  for (const auto& [x, y] : to) xs_by_row[static_cast<size_t>(y)].push_back(x);

  const int reach = static_cast<int>(std::floor(std::sqrt(tol_sq)));
  std::uint64_t matched = 0;
  for (const auto& [px, py] : from) {
    bool hit = false;
    for (int y = std::max(0, py - reach); y <= std::min(height - 1, py + reach) && !hit;
         ++y) {
      const std::int64_t dy = y - py;
      for (int x : xs_by_row[static_cast<size_t>(y)]) {
        const std::int64_t dx = x - px;
        if (static_cast<double>(dx * dx + dy * dy) <= tol_sq) {
          hit = true;
          break;
        }
      }
    }
    if (hit) ++matched;
  }
  return static_cast<double>(matched) / static_cast<double>(from.size());
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(LabelSet labels)
    : labels_(std::move(labels)),
      counts_(static_cast<size_t>(labels_.count()) * labels_.count(), 0) {}

std::uint64_t ConfusionMatrix::at(int gt_index, int pred_index) const {
  return counts_[static_cast<size_t>(gt_index) * labels_.count() + pred_index];
}

void ConfusionMatrix::add(int gt_index, int pred_index, std::uint64_t n) {
  counts_[static_cast<size_t>(gt_index) * labels_.count() + pred_index] += n;
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t sum = 0;
  for (std::uint64_t c : counts_) sum += c;
  return sum;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t sum = 0;
  for (int i = 0; i < labels_.count(); ++i) sum += at(i, i);
  return sum;
}

std::uint64_t ConfusionMatrix::row_sum(int gt_index) const {
  std::uint64_t sum = 0;
  for (int j = 0; j < labels_.count(); ++j) sum += at(gt_index, j);
  return sum;
}

std::uint64_t ConfusionMatrix::col_sum(int pred_index) const {
  std::uint64_t sum = 0;
  for (int i = 0; i < labels_.count(); ++i) sum += at(i, pred_index);
  return sum;
}

void ConfusionMatrix::merge(const ConfusionMatrix& other) {
  if (!(labels_ == other.labels_)) {
    throw std::invalid_argument("cannot merge confusion matrices over different label sets");
  }
  for (size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

ConfusionMatrix confusion(const LabelMask& pred, const LabelMask& gt) {
  require_comparable(pred, gt);
  ConfusionMatrix cm(gt.label_set());
  const auto& p = pred.labels();
  const auto& g = gt.labels();
  for (size_t i = 0; i < g.size(); ++i) {
    cm.add(gt.label_set().index_of(g[i]), gt.label_set().index_of(p[i]));
  }
  return cm;
}

Score class_accuracy(const ConfusionMatrix& cm, int label) {
  const int i = require_label(cm.labels(), label);
  const std::uint64_t row = cm.row_sum(i);
  if (row == 0) return std::nullopt;
  return static_cast<double>(cm.at(i, i)) / static_cast<double>(row);
}

Score class_iou(const ConfusionMatrix& cm, int label) {
  const int i = require_label(cm.labels(), label);
  const std::uint64_t denom = cm.row_sum(i) + cm.col_sum(i) - cm.at(i, i);
  if (denom == 0) return std::nullopt;
  return static_cast<double>(cm.at(i, i)) / static_cast<double>(denom);
}

AggregateScores aggregate(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) throw std::invalid_argument("confusion matrix holds no pixels");

  AggregateScores out;
  out.global_accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);

  double acc_sum = 0.0, iou_sum = 0.0, wiou_sum = 0.0;
  int acc_n = 0, iou_n = 0;
  for (int label : cm.labels().labels()) {
    if (const Score acc = class_accuracy(cm, label)) {
      acc_sum += *acc;
      ++acc_n;
    }
    if (const Score iou = class_iou(cm, label)) {
      iou_sum += *iou;
      ++iou_n;
      const int i = cm.labels().index_of(label);
      wiou_sum += (static_cast<double>(cm.row_sum(i)) / static_cast<double>(total)) * *iou;
    }
  }
  if (acc_n > 0) out.mean_accuracy = acc_sum / acc_n;
  if (iou_n > 0) {
    out.mean_iou = iou_sum / iou_n;
    out.weighted_iou = wiou_sum;
  }
  return out;
}

double BFTolerance::resolve(Size size) const {
  if (pixels) return *pixels;
  const double diagonal = std::hypot(static_cast<double>(size.width),
                                     static_cast<double>(size.height));
  return std::max(1.0, 0.0075 * diagonal);
}

Score bf_score(const LabelMask& pred, const LabelMask& gt, int label,
               const BFTolerance& tol) {
  require_comparable(pred, gt);
  require_label(gt.label_set(), label);

  const auto pred_boundary = boundary_pixels(pred, label);
  const auto gt_boundary = boundary_pixels(gt, label);
  if (pred_boundary.empty() && gt_boundary.empty()) return std::nullopt;
  if (pred_boundary.empty() || gt_boundary.empty()) return 0.0;

  const double threshold = tol.resolve(gt.size());
  if (!(threshold > 0.0)) throw std::invalid_argument("BF distance threshold must be > 0");
  const double tol_sq = threshold * threshold;

  const double precision = matched_fraction(pred_boundary, gt_boundary, gt.height(), tol_sq);
  const double recall = matched_fraction(gt_boundary, pred_boundary, gt.height(), tol_sq);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

Score mean_bf(const LabelMask& pred, const LabelMask& gt, const BFTolerance& tol) {
  double sum = 0.0;
  int n = 0;
  for (int label : gt.label_set().labels()) {
    if (const Score s = bf_score(pred, gt, label, tol)) {
      sum += *s;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

MetricsReport evaluate(const LabelMask& pred, const LabelMask& gt, const BFTolerance& tol) {
  const ConfusionMatrix cm = confusion(pred, gt);

  MetricsReport report;
  for (int label : gt.label_set().labels()) {
    report.per_class_accuracy.push_back(class_accuracy(cm, label));
    report.per_class_iou.push_back(class_iou(cm, label));
    report.per_class_bf.push_back(bf_score(pred, gt, label, tol));
  }
  const AggregateScores agg = aggregate(cm);
  report.global_accuracy = agg.global_accuracy;
  report.mean_accuracy = agg.mean_accuracy;
  report.mean_iou = agg.mean_iou;
  report.weighted_iou = agg.weighted_iou;

  double bf_sum = 0.0;
  int bf_n = 0;
  for (const Score& s : report.per_class_bf) {
    if (s) {
      bf_sum += *s;
      ++bf_n;
    }
  }
  if (bf_n > 0) report.mean_bf = bf_sum / bf_n;
  return report;
}

Score percentage_increase(double a, double b) {
  if (b == 0.0) return std::nullopt;
  return (a - b) / b * 100.0;
}

Score percentage_increase(const Score& a, const Score& b) {
  if (!a || !b) return std::nullopt;
  return percentage_increase(*a, *b);
}

}  // namespace maskresize::metrics

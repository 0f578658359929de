#pragma once

// Brute-force reference implementations the tests check the library against.
// Everything here favors obviousness over speed and shares no code with the
// production paths: replication loops, sort-based medians, direct pixel
// scans, quadratic boundary matching.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "maskresize/raster.hpp"

namespace oracles {

using maskresize::Image;
using maskresize::LabelMask;
using maskresize::LabelSet;
using maskresize::Size;

// Integer-factor upsample: every source pixel becomes a factor x factor block.
inline Image replicate(const Image& img, int factor) {
  const Size out_size{img.width() * factor, img.height() * factor};
  Image out(out_size, 0.0, img.lo(), img.hi());
  for (int y = 0; y < out_size.height; ++y) {
    for (int x = 0; x < out_size.width; ++x) {
      out.at(x, y) = img.at(x / factor, y / factor);
    }
  }
  return out;
}

// Median by materializing and sorting each window, clamp-to-edge padding.
inline Image median_by_sort(const Image& img, int window) {
  const int r = window / 2;
  Image out(img.size(), 0.0, img.lo(), img.hi());
  std::vector<double> values;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      values.clear();
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const int sx = std::clamp(x + dx, 0, img.width() - 1);
          const int sy = std::clamp(y + dy, 0, img.height() - 1);
          values.push_back(img.at(sx, sy));
        }
      }
      std::sort(values.begin(), values.end());
      out.at(x, y) = values[values.size() / 2];
    }
  }
  return out;
}

// Per-class tallies by direct scan; no confusion matrix involved.
struct ClassTally {
  std::uint64_t tp = 0;          // pixels of the class in both rasters
  std::uint64_t gt_total = 0;    // ground-truth pixels of the class
  std::uint64_t pred_total = 0;  // predicted pixels of the class
};

inline ClassTally tally(const LabelMask& pred, const LabelMask& gt, int label) {
  ClassTally t;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      const bool in_gt = gt.at(x, y) == label;
      const bool in_pred = pred.at(x, y) == label;
      t.gt_total += in_gt;
      t.pred_total += in_pred;
      t.tp += in_gt && in_pred;
    }
  }
  return t;
}

inline std::optional<double> brute_accuracy(const LabelMask& pred, const LabelMask& gt,
                                            int label) {
  const ClassTally t = tally(pred, gt, label);
  if (t.gt_total == 0) return std::nullopt;
  return static_cast<double>(t.tp) / static_cast<double>(t.gt_total);
}

inline std::optional<double> brute_iou(const LabelMask& pred, const LabelMask& gt,
                                       int label) {
  const ClassTally t = tally(pred, gt, label);
  const std::uint64_t union_count = t.gt_total + t.pred_total - t.tp;
  if (union_count == 0) return std::nullopt;
  return static_cast<double>(t.tp) / static_cast<double>(union_count);
}

inline std::optional<double> brute_global_accuracy(const LabelMask& pred,
                                                   const LabelMask& gt) {
  std::uint64_t matches = 0;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) matches += pred.at(x, y) == gt.at(x, y);
  }
  return static_cast<double>(matches) / static_cast<double>(gt.size().pixel_count());
}

inline std::optional<double> brute_mean_accuracy(const LabelMask& pred,
                                                 const LabelMask& gt) {
  double sum = 0.0;
  int defined = 0;
  for (int label : gt.label_set().labels()) {
    if (const auto a = brute_accuracy(pred, gt, label)) {
      sum += *a;
      ++defined;
    }
  }
  if (defined == 0) return std::nullopt;
  return sum / defined;
}

inline std::optional<double> brute_mean_iou(const LabelMask& pred, const LabelMask& gt) {
  double sum = 0.0;
  int defined = 0;
  for (int label : gt.label_set().labels()) {
    if (const auto v = brute_iou(pred, gt, label)) {
      sum += *v;
      ++defined;
    }
  }
  if (defined == 0) return std::nullopt;
  return sum / defined;
}

inline std::optional<double> brute_weighted_iou(const LabelMask& pred,
                                                const LabelMask& gt) {
  // Shape of the fold (per-class weight*iou accumulated in label order)
  // matters for bit-exact comparison, so it mirrors the documented formula.
  const double total = static_cast<double>(gt.size().pixel_count());
  double sum = 0.0;
  bool defined = false;
  for (int label : gt.label_set().labels()) {
    const ClassTally t = tally(pred, gt, label);
    if (const auto v = brute_iou(pred, gt, label)) {
      sum += (static_cast<double>(t.gt_total) / total) * *v;
      defined = true;
    }
  }
  if (!defined) return std::nullopt;
  return sum;
}

struct Pixel {
  int x = 0;
  int y = 0;
};

// A pixel of the class is boundary when it touches the raster edge or any
// 4-neighbor holds a different label.
inline std::vector<Pixel> boundary_pixels(const LabelMask& mask, int label) {
  std::vector<Pixel> out;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y) != label) continue;
      const bool on_edge =
          x == 0 || y == 0 || x == mask.width() - 1 || y == mask.height() - 1;
      const bool differing_neighbor =
          (x > 0 && mask.at(x - 1, y) != label) ||
          (x < mask.width() - 1 && mask.at(x + 1, y) != label) ||
          (y > 0 && mask.at(x, y - 1) != label) ||
          (y < mask.height() - 1 && mask.at(x, y + 1) != label);
      if (on_edge || differing_neighbor) out.push_back({x, y});
    }
  }
  return out;
}

inline double matched_fraction(const std::vector<Pixel>& from,
                               const std::vector<Pixel>& to, double tol) {
  const double budget = tol * tol;
  std::size_t matched = 0;
  for (const Pixel& p : from) {
    for (const Pixel& q : to) {
      const double dx = p.x - q.x;
      const double dy = p.y - q.y;
      if (dx * dx + dy * dy <= budget) {
        ++matched;
        break;
      }
    }
  }
  return static_cast<double>(matched) / static_cast<double>(from.size());
}

inline std::optional<double> brute_bf(const LabelMask& pred, const LabelMask& gt,
                                      int label, double tol) {
  const std::vector<Pixel> pred_boundary = boundary_pixels(pred, label);
  const std::vector<Pixel> gt_boundary = boundary_pixels(gt, label);
  if (pred_boundary.empty() && gt_boundary.empty()) return std::nullopt;
  if (pred_boundary.empty() || gt_boundary.empty()) return 0.0;
  const double precision = matched_fraction(pred_boundary, gt_boundary, tol);
  const double recall = matched_fraction(gt_boundary, pred_boundary, tol);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

inline std::optional<double> brute_mean_bf(const LabelMask& pred, const LabelMask& gt,
                                           double tol) {
  double sum = 0.0;
  int defined = 0;
  for (int label : gt.label_set().labels()) {
    if (const auto v = brute_bf(pred, gt, label, tol)) {
      sum += *v;
      ++defined;
    }
  }
  if (defined == 0) return std::nullopt;
  return sum / defined;
}

}  // namespace oracles

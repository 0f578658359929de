#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maskresize/dataset.hpp"
#include "maskresize/maskproc.hpp"
#include "maskresize/metrics.hpp"
#include "maskresize/raster.hpp"
#include "maskresize/synth.hpp"

namespace maskresize::experiment {

using maskproc::MaskResizeStrategy;
using metrics::BFTolerance;
using metrics::MetricsReport;
using metrics::Score;

// A paired strategy names how the image and its mask travel together through
// a resize: first token the image kernel, second the mask treatment. Only
// the mask side affects the metrics here, so NN-NN and BIC-NN produce
// identical mask scores by construction.
enum class PairedStrategy { kNNNN, kBICNN, kBICBIC };

const char* strategy_name(PairedStrategy s);
std::optional<PairedStrategy> strategy_from_name(const std::string& name);

// Mask treatment backing each paired strategy: NN passthrough for *-NN,
// thresholded/median-filtered bicubic for BIC-BIC.
MaskResizeStrategy mask_strategy_for(PairedStrategy s, int median_window,
                                     double threshold_level);

enum class ComparisonMode { kSynthetic, kDataset };
enum class ReportFormat { kCsv, kJson };

struct ExperimentConfig {
  ComparisonMode mode = ComparisonMode::kSynthetic;
  int shapes = 100;  // synthetic item count
  std::uint64_t seed = 12345;
  Size source_size{128, 128};
  std::vector<Size> target_sizes{{256, 256}, {384, 384}};
  std::vector<PairedStrategy> strategies{PairedStrategy::kNNNN, PairedStrategy::kBICNN,
                                         PairedStrategy::kBICBIC};
  std::vector<int> labels{255, 128, 0};  // priority order, background last
  int median_window = 3;
  double threshold_level = 0.5;
  BFTolerance bf_tolerance{};
  synth::SynthBounds synth_bounds{};
  std::string dataset_dir;           // dataset mode only
  dataset::SplitFractions split{};   // dataset mode evaluates the test subset
  ReportFormat format = ReportFormat::kCsv;
  std::string output = "report.csv";
};

// Throws std::invalid_argument describing every violated field constraint.
void check_config(const ExperimentConfig& config);

// Round trip used throughout: the ground-truth mask is reduced to
// source_size with nearest neighbor (the mask-safe way to fabricate a
// low-resolution source), then brought back to the ground-truth size with
// the strategy under test.
LabelMask roundtrip_mask(const LabelMask& gt, Size source_size,
                         const MaskResizeStrategy& strategy);
MetricsReport roundtrip_metrics(const LabelMask& gt, Size source_size,
                                const MaskResizeStrategy& strategy,
                                const BFTolerance& tolerance);

struct StrategyResult {
  PairedStrategy strategy = PairedStrategy::kNNNN;
  // Label-order per-class scores. Accuracy and IoU come from the confusion
  // matrix pooled over all items; BF is averaged over the items where the
  // class has a defined score.
  std::vector<Score> accuracy;
  std::vector<Score> iou;
  std::vector<Score> bf;
  Score global_accuracy;
  Score mean_accuracy;
  Score mean_iou;
  Score weighted_iou;
  Score mean_bf;

  bool operator==(const StrategyResult&) const = default;
};

struct TargetResult {
  Size target{0, 0};
  std::vector<StrategyResult> strategies;

  bool operator==(const TargetResult&) const = default;
};

struct ComparisonReport {
  LabelSet labels = LabelSet::default_three_class();
  std::vector<TargetResult> targets;
  std::string mode;
  int item_count = 0;
  std::uint64_t seed = 0;
  Size source_size{0, 0};
  std::string config_hash;
  std::string note;

  bool operator==(const ComparisonReport&) const = default;
};

// Runs the full comparison described by the config. Items are processed in
// parallel (MASKRESIZE_THREADS workers) with per-item result slots, so the
// report is identical for any worker count. Dataset mode requires all masks
// to share one size, which becomes the single target.
ComparisonReport run_comparison(const ExperimentConfig& config);

}  // namespace maskresize::experiment

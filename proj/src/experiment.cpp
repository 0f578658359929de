#include "maskresize/experiment.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maskresize/config.hpp"
#include "maskresize/image_io.hpp"
#include "maskresize/parallel.hpp"

namespace maskresize::experiment {

const char* strategy_name(PairedStrategy s) {
  switch (s) {
    case PairedStrategy::kNNNN: return "NN-NN";
    case PairedStrategy::kBICNN: return "BIC-NN";
    case PairedStrategy::kBICBIC: return "BIC-BIC";
  }
  return "?";
}

std::optional<PairedStrategy> strategy_from_name(const std::string& name) {
  if (name == "NN-NN") return PairedStrategy::kNNNN;
  if (name == "BIC-NN") return PairedStrategy::kBICNN;
  if (name == "BIC-BIC") return PairedStrategy::kBICBIC;
  return std::nullopt;
}

MaskResizeStrategy mask_strategy_for(PairedStrategy s, int median_window,
                                     double threshold_level) {
  MaskResizeStrategy strat;
  strat.kind = s == PairedStrategy::kBICBIC ? maskproc::StrategyKind::kBicubicProcessed
                                            : maskproc::StrategyKind::kNearest;
  strat.median_window = median_window;
  strat.threshold_level = threshold_level;
  return strat;
}

void check_config(const ExperimentConfig& config) {
  std::vector<std::string> problems;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) problems.push_back(msg);
  };

  require(config.source_size.width >= 1 && config.source_size.height >= 1,
          "source_size must be at least 1x1");
  require(!config.strategies.empty(), "strategies must not be empty");
  for (std::size_t i = 0; i < config.strategies.size(); ++i) {
    for (std::size_t j = i + 1; j < config.strategies.size(); ++j) {
      if (config.strategies[i] == config.strategies[j]) {
        require(false, std::string("duplicate strategy ") +
                           strategy_name(config.strategies[i]));
      }
    }
  }
  require(config.labels.size() >= 2, "labels needs a foreground and a background class");
  require(config.median_window >= 3 && config.median_window % 2 == 1,
          "median_window must be odd and >= 3");
  require(config.threshold_level > 0.0 && config.threshold_level < 1.0,
          "threshold_level must lie in (0, 1)");
  if (config.bf_tolerance.pixels) {
    require(*config.bf_tolerance.pixels >= 0.0, "bf_tolerance must be non-negative");
  }
  require(!config.output.empty(), "output path must not be empty");

  if (config.mode == ComparisonMode::kSynthetic) {
    require(config.shapes >= 1, "shapes must be at least 1 in synthetic mode");
    require(!config.target_sizes.empty(), "target_sizes must not be empty");
    for (const Size& t : config.target_sizes) {
      require(t.width >= 1 && t.height >= 1, "target sizes must be at least 1x1");
    }
  } else {
    require(!config.dataset_dir.empty(), "dataset mode needs dataset_dir");
  }

  try {
    dataset::check_fractions(config.split);
  } catch (const std::invalid_argument& e) {
    problems.emplace_back(e.what());
  }
  try {
    synth::check_bounds(config.synth_bounds);
  } catch (const std::invalid_argument& e) {
    problems.emplace_back(e.what());
  }
  try {
    LabelSet probe(config.labels);
  } catch (const std::invalid_argument& e) {
    problems.emplace_back(e.what());
  }

  if (!problems.empty()) {
    std::string msg = "invalid experiment config:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
  }
}

LabelMask roundtrip_mask(const LabelMask& gt, Size source_size,
                         const MaskResizeStrategy& strategy) {
  const MaskResizeStrategy nn{};  // kNearest: the mask-safe downsample
  const LabelMask src = maskproc::mask_resize(gt, interp::ResizeSpec{source_size}, nn);
  return maskproc::mask_resize(src, interp::ResizeSpec{gt.size()}, strategy);
}

MetricsReport roundtrip_metrics(const LabelMask& gt, Size source_size,
                                const MaskResizeStrategy& strategy,
                                const BFTolerance& tolerance) {
  return metrics::evaluate(roundtrip_mask(gt, source_size, strategy), gt, tolerance);
}

namespace {

// Everything one item contributes to the pooled report, per strategy.
struct ItemOutcome {
  std::vector<metrics::ConfusionMatrix> confusion;
  std::vector<std::vector<Score>> bf;  // [strategy][label index]
};

ItemOutcome evaluate_item(const LabelMask& gt, const ExperimentConfig& config) {
  const MaskResizeStrategy nn{};
  const LabelMask src = maskproc::mask_resize(gt, interp::ResizeSpec{config.source_size}, nn);
  const interp::ResizeSpec up{gt.size()};

  ItemOutcome out;
  out.confusion.reserve(config.strategies.size());
  out.bf.reserve(config.strategies.size());
  for (const PairedStrategy s : config.strategies) {
    const MaskResizeStrategy strat =
        mask_strategy_for(s, config.median_window, config.threshold_level);
    const LabelMask pred = maskproc::mask_resize(src, up, strat);
    out.confusion.push_back(metrics::confusion(pred, gt));
    std::vector<Score> per_label;
    per_label.reserve(gt.label_set().labels().size());
    for (const int label : gt.label_set().labels()) {
      per_label.push_back(metrics::bf_score(pred, gt, label, config.bf_tolerance));
    }
    out.bf.push_back(std::move(per_label));
  }
  return out;
}

TargetResult reduce_outcomes(Size target,
                             const std::vector<std::optional<ItemOutcome>>& outcomes,
                             const ExperimentConfig& config, const LabelSet& labels) {
  TargetResult result;
  result.target = target;
  const int k = labels.count();

  for (std::size_t si = 0; si < config.strategies.size(); ++si) {
    metrics::ConfusionMatrix pooled(labels);
    std::vector<double> bf_sum(static_cast<std::size_t>(k), 0.0);
    std::vector<std::int64_t> bf_n(static_cast<std::size_t>(k), 0);
    for (const auto& item : outcomes) {
      pooled.merge(item->confusion[si]);
      for (int c = 0; c < k; ++c) {
        if (item->bf[si][static_cast<std::size_t>(c)]) {
          bf_sum[static_cast<std::size_t>(c)] += *item->bf[si][static_cast<std::size_t>(c)];
          ++bf_n[static_cast<std::size_t>(c)];
        }
      }
    }

    StrategyResult sr;
    sr.strategy = config.strategies[si];
    for (const int label : labels.labels()) {
      sr.accuracy.push_back(metrics::class_accuracy(pooled, label));
      sr.iou.push_back(metrics::class_iou(pooled, label));
    }
    for (int c = 0; c < k; ++c) {
      const auto idx = static_cast<std::size_t>(c);
      sr.bf.push_back(bf_n[idx] > 0 ? Score(bf_sum[idx] / static_cast<double>(bf_n[idx]))
                                    : std::nullopt);
    }
    const metrics::AggregateScores agg = metrics::aggregate(pooled);
    sr.global_accuracy = agg.global_accuracy;
    sr.mean_accuracy = agg.mean_accuracy;
    sr.mean_iou = agg.mean_iou;
    sr.weighted_iou = agg.weighted_iou;
    double bf_total = 0.0;
    int bf_defined = 0;
    for (const Score& b : sr.bf) {
      if (b) {
        bf_total += *b;
        ++bf_defined;
      }
    }
    sr.mean_bf = bf_defined > 0 ? Score(bf_total / bf_defined) : std::nullopt;
    result.strategies.push_back(std::move(sr));
  }
  return result;
}

}  // namespace

ComparisonReport run_comparison(const ExperimentConfig& config) {
  check_config(config);
  const LabelSet labels(config.labels);

  ComparisonReport report;
  report.labels = labels;
  report.mode = config.mode == ComparisonMode::kSynthetic ? "synthetic" : "dataset";
  report.seed = config.seed;
  report.source_size = config.source_size;
  report.config_hash = maskresize::config::hash_hex(config);
  report.note = "BIC-NN resamples masks via the NN pathway, so its mask scores match NN-NN";

  if (config.mode == ComparisonMode::kSynthetic) {
    report.item_count = config.shapes;
    for (const Size target : config.target_sizes) {
      std::vector<std::optional<ItemOutcome>> outcomes(
          static_cast<std::size_t>(config.shapes));
      parallel_for(config.shapes, [&](int i) {
        const synth::NestedEllipseShape shape =
            synth::shape_at(config.seed, static_cast<std::uint64_t>(i), config.synth_bounds);
        const LabelMask gt = synth::rasterize_shape(shape, target, labels);
        outcomes[static_cast<std::size_t>(i)].emplace(evaluate_item(gt, config));
      });
      report.targets.push_back(reduce_outcomes(target, outcomes, config, labels));
    }
    return report;
  }

  const std::vector<dataset::DatasetEntry> entries =
      dataset::load_dataset(config.dataset_dir, LabelSet(config.labels));
  if (entries.empty()) {
    throw std::invalid_argument("dataset " + config.dataset_dir +
                                " contains no image/mask pairs");
  }
  const dataset::DatasetSplit split =
      dataset::split_dataset(entries, config.split, config.seed);
  const std::vector<dataset::DatasetEntry>& eval = split.test;
  if (eval.empty()) {
    throw std::invalid_argument(
        "test split is empty; adjust split fractions or dataset size");
  }

  const int n = static_cast<int>(eval.size());
  std::vector<std::optional<LabelMask>> masks(eval.size());
  parallel_for(n, [&](int i) {
    masks[static_cast<std::size_t>(i)].emplace(
        io::load_mask(eval[static_cast<std::size_t>(i)].mask_path, labels));
  });

  const Size target = masks[0]->size();
  std::vector<std::string> size_problems;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (masks[i]->size() != target) {
      size_problems.push_back(eval[i].stem + " is " + std::to_string(masks[i]->width()) +
                              "x" + std::to_string(masks[i]->height()));
    }
  }
  if (!size_problems.empty()) {
    std::string msg = "dataset masks must share one size (target derives from it); first is " +
                      std::to_string(target.width) + "x" + std::to_string(target.height) +
                      " but:";
    for (const auto& p : size_problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
  }

  report.item_count = n;
  std::vector<std::optional<ItemOutcome>> outcomes(eval.size());
  parallel_for(n, [&](int i) {
    outcomes[static_cast<std::size_t>(i)].emplace(
        evaluate_item(*masks[static_cast<std::size_t>(i)], config));
  });
  report.targets.push_back(reduce_outcomes(target, outcomes, config, labels));
  return report;
}

}  // namespace maskresize::experiment

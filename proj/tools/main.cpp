#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maskresize/config.hpp"
#include "maskresize/experiment.hpp"
#include "maskresize/image_io.hpp"
#include "maskresize/interp.hpp"
#include "maskresize/maskproc.hpp"
#include "maskresize/metrics.hpp"
#include "maskresize/raster.hpp"
#include "maskresize/report.hpp"
#include "maskresize/version.hpp"

namespace {

using namespace maskresize;

// Distinct rounded pixel values, brightest first so higher intensity wins
// overlap priority; the darkest value is the background. A file with many
// distinct values is a continuous image, not a mask.
LabelSet derive_label_set(const Image& img, const std::string& path) {
  std::set<int> seen;
  for (const double v : img.pixels()) {
    seen.insert(static_cast<int>(std::llround(v)));
    if (seen.size() > 16) {
      throw std::invalid_argument(path +
                                  ": more than 16 distinct values; not a discrete mask "
                                  "(pass --labels to declare the label set)");
    }
  }
  std::vector<int> labels(seen.rbegin(), seen.rend());
  return LabelSet(labels);
}

LabelMask mask_from_image_checked(const Image& img, const LabelSet& set,
                                  const std::string& path) {
  std::vector<int> values(img.pixels().size());
  std::transform(img.pixels().begin(), img.pixels().end(), values.begin(),
                 [](double v) { return static_cast<int>(std::llround(v)); });
  try {
    return LabelMask(img.size(), std::move(values), set);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string fmt6(const metrics::Score& s) {
  if (!s) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", *s);
  return buf;
}

struct ResizeArgs {
  std::string in;
  std::string out;
  int width = 0;
  int height = 0;
  std::string strategy;
  int median_window = 3;
  double threshold = 0.5;
  std::vector<int> labels;
  bool tuning_given = false;  // --median-window or --threshold present
};

void run_resize(const ResizeArgs& args) {
  const interp::ResizeSpec spec{Size{args.width, args.height}};
  if (args.strategy == "bic-processed") {
    const Image img = io::load_image(args.in);
    const LabelSet set =
        args.labels.empty() ? derive_label_set(img, args.in) : LabelSet(args.labels);
    const LabelMask mask = mask_from_image_checked(img, set, args.in);
    maskproc::MaskResizeStrategy strat;
    strat.kind = maskproc::StrategyKind::kBicubicProcessed;
    strat.median_window = args.median_window;
    strat.threshold_level = args.threshold;
    io::save_mask(maskproc::mask_resize(mask, spec, strat), args.out);
    return;
  }

  if (args.tuning_given) {
    throw std::invalid_argument("--median-window/--threshold only apply to bic-processed");
  }
  if (!args.labels.empty()) {
    throw std::invalid_argument("--labels only applies to bic-processed");
  }
  const Image img = io::load_image(args.in);
  Image out = args.strategy == "nn"         ? interp::resize_nn(img, spec)
              : args.strategy == "bilinear" ? interp::resize_bilinear(img, spec)
                                            : interp::resize_bicubic(img, spec);
  io::save_image(out, args.out);
}

struct MetricsArgs {
  std::string pred;
  std::string gt;
  std::optional<double> bf_tol;
  std::vector<int> labels;
};

void run_metrics(const MetricsArgs& args) {
  LabelSet set = [&] {
    if (!args.labels.empty()) return LabelSet(args.labels);
    // Label set spans both files so a class missed by one still counts.
    const Image pred_img = io::load_image(args.pred);
    const Image gt_img = io::load_image(args.gt);
    std::set<int> seen;
    for (const Image* img : {&pred_img, &gt_img}) {
      for (const double v : img->pixels()) {
        seen.insert(static_cast<int>(std::llround(v)));
        if (seen.size() > 16) {
          throw std::invalid_argument(
              "more than 16 distinct values across the two files; pass --labels");
        }
      }
    }
    std::vector<int> labels(seen.rbegin(), seen.rend());
    return LabelSet(labels);
  }();

  const LabelMask pred = io::load_mask(args.pred, set);
  const LabelMask gt = io::load_mask(args.gt, set);
  metrics::BFTolerance tol;
  tol.pixels = args.bf_tol;
  const metrics::MetricsReport r = metrics::evaluate(pred, gt, tol);

  std::string out = "label,metric,value\n";
  const auto& labels = set.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string label = std::to_string(labels[i]);
    out += label + ",accuracy," + fmt6(r.per_class_accuracy[i]) + "\n";
    out += label + ",iou," + fmt6(r.per_class_iou[i]) + "\n";
    out += label + ",bf," + fmt6(r.per_class_bf[i]) + "\n";
  }
  out += "ALL,global_accuracy," + fmt6(r.global_accuracy) + "\n";
  out += "ALL,mean_accuracy," + fmt6(r.mean_accuracy) + "\n";
  out += "ALL,mean_iou," + fmt6(r.mean_iou) + "\n";
  out += "ALL,weighted_iou," + fmt6(r.weighted_iou) + "\n";
  out += "ALL,mean_bf," + fmt6(r.mean_bf) + "\n";
  std::cout << out;
}

struct CompareArgs {
  std::string config_path;
  bool synthetic = false;
  std::optional<int> shapes;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void run_compare(const CompareArgs& args) {
  experiment::ExperimentConfig cfg;
  if (!args.config_path.empty()) cfg = config::parse_file(args.config_path);
  if (args.synthetic) cfg.mode = experiment::ComparisonMode::kSynthetic;
  if (args.shapes) cfg.shapes = *args.shapes;
  if (args.seed) cfg.seed = *args.seed;
  if (!args.out.empty()) {
    cfg.output = args.out;
    // The extension states the intent more directly than a separate flag.
    if (args.out.size() >= 5 && args.out.ends_with(".json")) {
      cfg.format = experiment::ReportFormat::kJson;
    } else if (args.out.ends_with(".csv")) {
      cfg.format = experiment::ReportFormat::kCsv;
    }
  }

  const experiment::ComparisonReport report = experiment::run_comparison(cfg);
  report::write_report(report, cfg.format, cfg.output);
  std::cout << "wrote " << cfg.output << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mask-safe raster resizing and segmentation metrics"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ResizeArgs resize_args;
  CLI::App* resize = app.add_subcommand("resize", "resize one image or mask file");
  resize->add_option("--in", resize_args.in, "input image (PNG or PGM)")->required();
  resize->add_option("--out", resize_args.out, "output path (.png or .pgm)")->required();
  resize->add_option("--width", resize_args.width, "target width")
      ->required()
      ->check(CLI::PositiveNumber);
  resize->add_option("--height", resize_args.height, "target height")
      ->required()
      ->check(CLI::PositiveNumber);
  resize->add_option("--strategy", resize_args.strategy,
                     "nn | bilinear | bicubic | bic-processed")
      ->required()
      ->check(CLI::IsMember({"nn", "bilinear", "bicubic", "bic-processed"}));
  CLI::Option* median_opt = resize->add_option(
      "--median-window", resize_args.median_window, "median window (odd, >= 3)");
  CLI::Option* threshold_opt = resize->add_option(
      "--threshold", resize_args.threshold, "class threshold level in (0, 1)");
  resize->add_option("--labels", resize_args.labels,
                     "label set, priority order, background last")
      ->delimiter(',');
  resize->callback([&] {
    resize_args.tuning_given = median_opt->count() > 0 || threshold_opt->count() > 0;
    run_resize(resize_args);
  });

  MetricsArgs metrics_args;
  double bf_tol_value = 0.0;
  CLI::App* metrics_cmd =
      app.add_subcommand("metrics", "score a predicted mask against ground truth");
  metrics_cmd->add_option("--pred", metrics_args.pred, "predicted mask")->required();
  metrics_cmd->add_option("--gt", metrics_args.gt, "ground-truth mask")->required();
  CLI::Option* bf_tol_opt = metrics_cmd->add_option(
      "--bf-tol", bf_tol_value, "boundary match tolerance in pixels (default: auto)");
  metrics_cmd->add_option("--labels", metrics_args.labels,
                          "label set, priority order, background last")
      ->delimiter(',');
  metrics_cmd->callback([&] {
    if (bf_tol_opt->count() > 0) metrics_args.bf_tol = bf_tol_value;
    run_metrics(metrics_args);
  });

  CompareArgs compare_args;
  int shapes_value = 0;
  std::uint64_t seed_value = 0;
  CLI::App* compare =
      app.add_subcommand("compare", "run the resampling strategy comparison");
  compare->add_option("--config", compare_args.config_path, "key=value config file");
  CLI::Option* synthetic_opt =
      compare->add_flag("--synthetic", "use generated shapes (the default mode)");
  CLI::Option* shapes_opt =
      compare->add_option("--shapes", shapes_value, "synthetic item count");
  CLI::Option* seed_opt = compare->add_option("--seed", seed_value, "root RNG seed");
  compare->add_option("--out", compare_args.out,
                      "report path; .csv/.json extension selects the format");
  compare->callback([&] {
    compare_args.synthetic = synthetic_opt->count() > 0;
    if (shapes_opt->count() > 0) compare_args.shapes = shapes_value;
    if (seed_opt->count() > 0) compare_args.seed = seed_value;
    run_compare(compare_args);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const io::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

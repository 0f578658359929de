#include "maskresize/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "maskresize/image_io.hpp"
#include "maskresize/version.hpp"

namespace maskresize::report {
namespace {

using experiment::PairedStrategy;
using experiment::StrategyResult;
using experiment::TargetResult;
using metrics::percentage_increase;
using metrics::Score;
using nlohmann::json;

std::string fmt_size(Size s) {
  return std::to_string(s.width) + "x" + std::to_string(s.height);
}

std::string fmt6(const Score& s) {
  if (!s) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", *s);
  return buf;
}

// The CSV publishes six decimals, so its derived percentage column starts
// from exactly what the score cells say: format, then parse back. Anyone
// recomputing a percentage from the file's own cells reproduces the
// published cell bit for bit.
Score round6(const Score& s) {
  if (!s) return std::nullopt;
  return std::strtod(fmt6(s).c_str(), nullptr);
}

const StrategyResult* find_strategy(const TargetResult& target, PairedStrategy s) {
  for (const auto& sr : target.strategies) {
    if (sr.strategy == s) return &sr;
  }
  return nullptr;
}

bool has_percentage_section(const ComparisonReport& report) {
  if (report.targets.empty()) return false;
  const TargetResult& first = report.targets.front();
  return find_strategy(first, PairedStrategy::kNNNN) != nullptr &&
         first.strategies.size() >= 2;
}

json score_json(const Score& s) { return s ? json(*s) : json(); }

Score json_score(const json& j) {
  return j.is_null() ? Score{} : Score(j.get<double>());
}

}  // namespace

std::string to_csv(const ComparisonReport& report) {
  std::string out;
  out += "# maskresize comparison report\n";
  out += "# version=" + std::string(kVersion) + "\n";
  out += "# schema_version=" + std::to_string(kReportSchemaVersion) + "\n";
  out += "# mode=" + report.mode + "\n";
  out += "# items=" + std::to_string(report.item_count) + "\n";
  out += "# seed=" + std::to_string(report.seed) + "\n";
  out += "# source_size=" + fmt_size(report.source_size) + "\n";
  out += "# config_hash=" + report.config_hash + "\n";
  out += "# note=" + report.note + "\n";
  out += "target_size,strategy,label,metric,value\n";

  const std::vector<int>& labels = report.labels.labels();
  for (const TargetResult& t : report.targets) {
    const std::string size_cell = fmt_size(t.target);
    for (const StrategyResult& s : t.strategies) {
      const std::string prefix = size_cell + "," + experiment::strategy_name(s.strategy) + ",";
      for (std::size_t i = 0; i < labels.size(); ++i) {
        const std::string label_cell = std::to_string(labels[i]);
        out += prefix + label_cell + ",accuracy," + fmt6(s.accuracy[i]) + "\n";
        out += prefix + label_cell + ",iou," + fmt6(s.iou[i]) + "\n";
        out += prefix + label_cell + ",bf," + fmt6(s.bf[i]) + "\n";
      }
      out += prefix + "ALL,global_accuracy," + fmt6(s.global_accuracy) + "\n";
      out += prefix + "ALL,mean_accuracy," + fmt6(s.mean_accuracy) + "\n";
      out += prefix + "ALL,mean_iou," + fmt6(s.mean_iou) + "\n";
      out += prefix + "ALL,weighted_iou," + fmt6(s.weighted_iou) + "\n";
      out += prefix + "ALL,mean_bf," + fmt6(s.mean_bf) + "\n";
    }
  }

  if (has_percentage_section(report)) {
    out += "# percentage_increase baseline=NN-NN\n";
    out += "target_size,strategy,label,metric,percent_increase\n";
    for (const TargetResult& t : report.targets) {
      const StrategyResult* base = find_strategy(t, PairedStrategy::kNNNN);
      if (!base) continue;
      const std::string size_cell = fmt_size(t.target);
      // Baseline rows stay in: NN-NN against itself reads exactly 0 wherever
      // the score is usable, which makes the section self-checking.
      for (const StrategyResult& s : t.strategies) {
        const std::string prefix =
            size_cell + "," + experiment::strategy_name(s.strategy) + ",";
        auto pct = [](const Score& a, const Score& b) {
          return fmt6(percentage_increase(round6(a), round6(b)));
        };
        for (std::size_t i = 0; i < labels.size(); ++i) {
          const std::string label_cell = std::to_string(labels[i]);
          out += prefix + label_cell + ",accuracy," + pct(s.accuracy[i], base->accuracy[i]) + "\n";
          out += prefix + label_cell + ",iou," + pct(s.iou[i], base->iou[i]) + "\n";
          out += prefix + label_cell + ",bf," + pct(s.bf[i], base->bf[i]) + "\n";
        }
        out += prefix + "ALL,global_accuracy," +
               pct(s.global_accuracy, base->global_accuracy) + "\n";
        out += prefix + "ALL,mean_accuracy," + pct(s.mean_accuracy, base->mean_accuracy) + "\n";
        out += prefix + "ALL,mean_iou," + pct(s.mean_iou, base->mean_iou) + "\n";
        out += prefix + "ALL,weighted_iou," + pct(s.weighted_iou, base->weighted_iou) + "\n";
        out += prefix + "ALL,mean_bf," + pct(s.mean_bf, base->mean_bf) + "\n";
      }
    }
  }
  return out;
}

namespace {

json strategy_to_json(const StrategyResult& s, const std::vector<int>& labels) {
  json per_class = json::array();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    per_class.push_back({{"label", labels[i]},
                         {"accuracy", score_json(s.accuracy[i])},
                         {"iou", score_json(s.iou[i])},
                         {"bf", score_json(s.bf[i])}});
  }
  return {{"strategy", experiment::strategy_name(s.strategy)},
          {"per_class", per_class},
          {"aggregate",
           {{"global_accuracy", score_json(s.global_accuracy)},
            {"mean_accuracy", score_json(s.mean_accuracy)},
            {"mean_iou", score_json(s.mean_iou)},
            {"weighted_iou", score_json(s.weighted_iou)},
            {"mean_bf", score_json(s.mean_bf)}}}};
}

// Percentage block mirrors the strategy layout; JSON keeps full precision,
// so these derive from the unrounded scores.
json percentage_to_json(const StrategyResult& s, const StrategyResult& base,
                        const std::vector<int>& labels) {
  json per_class = json::array();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    per_class.push_back({{"label", labels[i]},
                         {"accuracy", score_json(percentage_increase(s.accuracy[i], base.accuracy[i]))},
                         {"iou", score_json(percentage_increase(s.iou[i], base.iou[i]))},
                         {"bf", score_json(percentage_increase(s.bf[i], base.bf[i]))}});
  }
  return {{"strategy", experiment::strategy_name(s.strategy)},
          {"per_class", per_class},
          {"aggregate",
           {{"global_accuracy",
             score_json(percentage_increase(s.global_accuracy, base.global_accuracy))},
            {"mean_accuracy",
             score_json(percentage_increase(s.mean_accuracy, base.mean_accuracy))},
            {"mean_iou", score_json(percentage_increase(s.mean_iou, base.mean_iou))},
            {"weighted_iou",
             score_json(percentage_increase(s.weighted_iou, base.weighted_iou))},
            {"mean_bf", score_json(percentage_increase(s.mean_bf, base.mean_bf))}}}};
}

StrategyResult strategy_from_json(const json& j, std::size_t label_count) {
  StrategyResult s;
  const auto strat = experiment::strategy_from_name(j.at("strategy").get<std::string>());
  if (!strat) {
    throw std::invalid_argument("report JSON: unrecognized strategy '" +
                                j.at("strategy").get<std::string>() + "'");
  }
  s.strategy = *strat;
  const json& per_class = j.at("per_class");
  if (per_class.size() != label_count) {
    throw std::invalid_argument("report JSON: per_class length does not match labels");
  }
  for (const json& row : per_class) {
    s.accuracy.push_back(json_score(row.at("accuracy")));
    s.iou.push_back(json_score(row.at("iou")));
    s.bf.push_back(json_score(row.at("bf")));
  }
  const json& agg = j.at("aggregate");
  s.global_accuracy = json_score(agg.at("global_accuracy"));
  s.mean_accuracy = json_score(agg.at("mean_accuracy"));
  s.mean_iou = json_score(agg.at("mean_iou"));
  s.weighted_iou = json_score(agg.at("weighted_iou"));
  s.mean_bf = json_score(agg.at("mean_bf"));
  return s;
}

}  // namespace

std::string to_json_text(const ComparisonReport& report) {
  const std::vector<int>& labels = report.labels.labels();
  json targets = json::array();
  for (const TargetResult& t : report.targets) {
    json strategies = json::array();
    for (const StrategyResult& s : t.strategies) {
      strategies.push_back(strategy_to_json(s, labels));
    }
    json jt = {{"target_size", {{"width", t.target.width}, {"height", t.target.height}}},
               {"strategies", strategies}};
    const StrategyResult* base = find_strategy(t, PairedStrategy::kNNNN);
    if (base && t.strategies.size() >= 2) {
      json pct = json::array();
      for (const StrategyResult& s : t.strategies) {
        pct.push_back(percentage_to_json(s, *base, labels));
      }
      jt["percentage_increase"] = {{"baseline", "NN-NN"}, {"strategies", pct}};
    }
    targets.push_back(jt);
  }

  const json j = {{"schema_version", kReportSchemaVersion},
                  {"version", kVersion},
                  {"mode", report.mode},
                  {"items", report.item_count},
                  {"seed", report.seed},
                  {"source_size",
                   {{"width", report.source_size.width}, {"height", report.source_size.height}}},
                  {"config_hash", report.config_hash},
                  {"note", report.note},
                  {"labels", report.labels.labels()},
                  {"background", report.labels.background()},
                  {"targets", targets}};
  return j.dump(2) + "\n";
}

ComparisonReport from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("report JSON: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
      throw std::invalid_argument("report JSON: unsupported schema_version");
    }
    const std::vector<int> labels = j.at("labels").get<std::vector<int>>();
    ComparisonReport report;
    report.labels = LabelSet(labels, j.at("background").get<int>());
    report.mode = j.at("mode").get<std::string>();
    report.item_count = j.at("items").get<int>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.source_size = Size{j.at("source_size").at("width").get<int>(),
                              j.at("source_size").at("height").get<int>()};
    report.config_hash = j.at("config_hash").get<std::string>();
    report.note = j.at("note").get<std::string>();
    for (const json& jt : j.at("targets")) {
      TargetResult t;
      t.target = Size{jt.at("target_size").at("width").get<int>(),
                      jt.at("target_size").at("height").get<int>()};
      for (const json& js : jt.at("strategies")) {
        t.strategies.push_back(strategy_from_json(js, labels.size()));
      }
      report.targets.push_back(std::move(t));
    }
    return report;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("report JSON: ") + e.what());
  }
}

void write_report(const ComparisonReport& report, ReportFormat format,
                  const std::string& path) {
  const std::string text =
      format == ReportFormat::kCsv ? to_csv(report) : to_json_text(report);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io::IoError("cannot open " + path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw io::IoError("write failure on " + path);
}

}  // namespace maskresize::report

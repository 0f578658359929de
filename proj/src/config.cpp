#include "maskresize/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "maskresize/image_io.hpp"

namespace maskresize::config {
namespace {

using experiment::ExperimentConfig;

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = value.find(',', start);
    parts.push_back(trim(value.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parts;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& expected) {
  throw std::invalid_argument("config key '" + key + "': cannot parse '" + value +
                              "' (" + expected + ")");
}

long long parse_ll(const std::string& key, const std::string& value) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    bad_value(key, value, "expected an integer");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    bad_value(key, value, "expected an unsigned integer");
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    bad_value(key, value, "expected a number");
  }
  return out;
}

Size parse_size(const std::string& key, const std::string& value) {
  const std::size_t x = value.find('x');
  if (x == std::string::npos || x == 0 || x + 1 >= value.size()) {
    bad_value(key, value, "expected WxH");
  }
  const long long w = parse_ll(key, trim(value.substr(0, x)));
  const long long h = parse_ll(key, trim(value.substr(x + 1)));
  if (w < 1 || h < 1 || w > 1 << 20 || h > 1 << 20) {
    bad_value(key, value, "dimensions must be in [1, 1048576]");
  }
  return Size{static_cast<int>(w), static_cast<int>(h)};
}

std::pair<double, double> parse_range(const std::string& key, const std::string& value) {
  const auto parts = split_list(value);
  if (parts.size() != 2) bad_value(key, value, "expected lo,hi");
  return {parse_double(key, parts[0]), parse_double(key, parts[1])};
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_size(Size s) {
  return std::to_string(s.width) + "x" + std::to_string(s.height);
}

void apply_key(ExperimentConfig& config, const std::string& key, const std::string& value) {
  if (key == "mode") {
    if (value == "synthetic") {
      config.mode = experiment::ComparisonMode::kSynthetic;
    } else if (value == "dataset") {
      config.mode = experiment::ComparisonMode::kDataset;
    } else {
      bad_value(key, value, "expected synthetic or dataset");
    }
  } else if (key == "shapes") {
    const long long n = parse_ll(key, value);
    if (n < 1 || n > 1'000'000) bad_value(key, value, "expected 1..1000000");
    config.shapes = static_cast<int>(n);
  } else if (key == "seed") {
    config.seed = parse_u64(key, value);
  } else if (key == "source_size") {
    config.source_size = parse_size(key, value);
  } else if (key == "target_sizes") {
    config.target_sizes.clear();
    for (const auto& part : split_list(value)) {
      config.target_sizes.push_back(parse_size(key, part));
    }
  } else if (key == "strategies") {
    config.strategies.clear();
    for (const auto& part : split_list(value)) {
      const auto s = experiment::strategy_from_name(part);
      if (!s) bad_value(key, part, "expected NN-NN, BIC-NN or BIC-BIC");
      config.strategies.push_back(*s);
    }
  } else if (key == "labels") {
    config.labels.clear();
    for (const auto& part : split_list(value)) {
      const long long v = parse_ll(key, part);
      if (v < 0 || v > 255) bad_value(key, part, "labels must be in [0, 255]");
      config.labels.push_back(static_cast<int>(v));
    }
  } else if (key == "median_window") {
    const long long n = parse_ll(key, value);
    if (n < 1 || n > 999) bad_value(key, value, "expected a small odd integer");
    config.median_window = static_cast<int>(n);
  } else if (key == "threshold_level") {
    config.threshold_level = parse_double(key, value);
  } else if (key == "bf_tolerance") {
    if (value == "auto") {
      config.bf_tolerance.pixels.reset();
    } else {
      config.bf_tolerance.pixels = parse_double(key, value);
    }
  } else if (key == "split") {
    const auto parts = split_list(value);
    if (parts.size() != 3) bad_value(key, value, "expected train,val,test");
    config.split.train = parse_double(key, parts[0]);
    config.split.val = parse_double(key, parts[1]);
    config.split.test = parse_double(key, parts[2]);
  } else if (key == "dataset_dir") {
    config.dataset_dir = value;
  } else if (key == "format") {
    if (value == "csv") {
      config.format = experiment::ReportFormat::kCsv;
    } else if (value == "json") {
      config.format = experiment::ReportFormat::kJson;
    } else {
      bad_value(key, value, "expected csv or json");
    }
  } else if (key == "output") {
    config.output = value;
  } else if (key == "synth_center") {
    std::tie(config.synth_bounds.center_lo, config.synth_bounds.center_hi) =
        parse_range(key, value);
  } else if (key == "synth_axis") {
    std::tie(config.synth_bounds.axis_lo, config.synth_bounds.axis_hi) =
        parse_range(key, value);
  } else if (key == "synth_inner_scale") {
    std::tie(config.synth_bounds.inner_scale_lo, config.synth_bounds.inner_scale_hi) =
        parse_range(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

}  // namespace

experiment::ExperimentConfig parse_text(const std::string& text) {
  ExperimentConfig config;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key=value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    }
    if (!seen.insert(key).second) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": key '" + key + "' assigned twice");
    }
    try {
      apply_key(config, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

experiment::ExperimentConfig parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::IoError("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io::IoError("read failure on " + path);
  return parse_text(buf.str());
}

std::string canonical_text(const experiment::ExperimentConfig& config) {
  auto join = [](const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += ",";
      out += parts[i];
    }
    return out;
  };

  std::vector<std::string> sizes;
  for (const Size& s : config.target_sizes) sizes.push_back(fmt_size(s));
  std::vector<std::string> strategies;
  for (const auto s : config.strategies) strategies.emplace_back(experiment::strategy_name(s));
  std::vector<std::string> labels;
  for (const int v : config.labels) labels.push_back(std::to_string(v));

  // Keys in sorted order; values in one normalized spelling each. Only keys
  // that determine the computed scores participate: where the report lands
  // (output) and how it is serialized (format) do not change the results, so
  // the same experiment keeps one hash across artifact destinations.
  std::string out;
  out += "bf_tolerance=" +
         (config.bf_tolerance.pixels ? fmt_double(*config.bf_tolerance.pixels)
                                     : std::string("auto")) +
         "\n";
  out += "dataset_dir=" + config.dataset_dir + "\n";
  out += "labels=" + join(labels) + "\n";
  out += "median_window=" + std::to_string(config.median_window) + "\n";
  out += "mode=" +
         std::string(config.mode == experiment::ComparisonMode::kSynthetic ? "synthetic"
                                                                           : "dataset") +
         "\n";
  out += "seed=" + std::to_string(config.seed) + "\n";
  out += "shapes=" + std::to_string(config.shapes) + "\n";
  out += "source_size=" + fmt_size(config.source_size) + "\n";
  out += "split=" + fmt_double(config.split.train) + "," + fmt_double(config.split.val) +
         "," + fmt_double(config.split.test) + "\n";
  out += "strategies=" + join(strategies) + "\n";
  out += "synth_axis=" + fmt_double(config.synth_bounds.axis_lo) + "," +
         fmt_double(config.synth_bounds.axis_hi) + "\n";
  out += "synth_center=" + fmt_double(config.synth_bounds.center_lo) + "," +
         fmt_double(config.synth_bounds.center_hi) + "\n";
  out += "synth_inner_scale=" + fmt_double(config.synth_bounds.inner_scale_lo) + "," +
         fmt_double(config.synth_bounds.inner_scale_hi) + "\n";
  out += "target_sizes=" + join(sizes) + "\n";
  out += "threshold_level=" + fmt_double(config.threshold_level) + "\n";
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(const experiment::ExperimentConfig& config) {
  const std::uint64_t h = fnv1a64(canonical_text(config));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace maskresize::config

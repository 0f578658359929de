#include "maskresize/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <utility>

#include "maskresize/image_io.hpp"

namespace maskresize::dataset {
namespace {

namespace fs = std::filesystem;

// stem -> path, with duplicate stems recorded separately.
std::map<std::string, std::string> index_dir(const fs::path& dir,
                                             std::vector<std::string>& problems) {
  std::map<std::string, std::string> out;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    const std::string stem = p.stem().string();
    auto [it, inserted] = out.emplace(stem, p.string());
    if (!inserted) {
      problems.push_back("duplicate stem '" + stem + "' in " + dir.string());
    }
  }
  return out;
}

}  // namespace

std::vector<DatasetEntry> load_dataset(const std::string& dir, const LabelSet& labels) {
  const fs::path root(dir);
  const fs::path images = root / "images";
  const fs::path masks = root / "masks";
  for (const auto& sub : {images, masks}) {
    std::error_code ec;
    if (!fs::is_directory(sub, ec)) {
      throw io::IoError("dataset directory " + sub.string() + " is missing");
    }
  }

  std::vector<std::string> problems;
  const auto image_index = index_dir(images, problems);
  const auto mask_index = index_dir(masks, problems);

  std::vector<DatasetEntry> entries;
  for (const auto& [stem, image_path] : image_index) {
    const auto it = mask_index.find(stem);
    if (it == mask_index.end()) {
      problems.push_back("image '" + stem + "' has no mask");
    } else {
      entries.push_back({stem, image_path, it->second});
    }
  }
  for (const auto& [stem, mask_path] : mask_index) {
    if (!image_index.contains(stem)) {
      problems.push_back("mask '" + stem + "' has no image");
    }
  }

  // Validate every pair up front; a bad dataset reports all offenders in one
  // pass instead of failing file by file mid-run.
  for (const DatasetEntry& entry : entries) {
    try {
      const Image img = io::load_image(entry.image_path);
      const LabelMask mask = io::load_mask(entry.mask_path, labels);
      if (img.size() != mask.size()) {
        problems.push_back("entry '" + entry.stem + "': image is " +
                           std::to_string(img.size().width) + "x" +
                           std::to_string(img.size().height) + " but mask is " +
                           std::to_string(mask.size().width) + "x" +
                           std::to_string(mask.size().height));
      }
    } catch (const std::exception& e) {
      problems.push_back("entry '" + entry.stem + "': " + e.what());
    }
  }

  if (!problems.empty()) {
    std::string msg = "dataset " + dir + " is inconsistent:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
  }
  return entries;  // std::map iteration already gives stem order
}

void check_fractions(const SplitFractions& fractions) {
  if (fractions.train < 0.0 || fractions.val < 0.0 || fractions.test < 0.0) {
    throw std::invalid_argument("split fractions must be non-negative");
  }
  const double sum = fractions.train + fractions.val + fractions.test;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("split fractions must sum to 1, got " +
                                std::to_string(sum));
  }
}

DatasetSplit split_dataset(const std::vector<DatasetEntry>& entries,
                           const SplitFractions& fractions, std::uint64_t seed) {
  check_fractions(fractions);
  std::vector<DatasetEntry> shuffled = entries;
  Rng rng(seed);
  for (std::size_t i = shuffled.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(i) - 1));
    std::swap(shuffled[i - 1], shuffled[j]);
  }

  const double n = static_cast<double>(shuffled.size());
  const auto n_val = static_cast<std::size_t>(std::floor(n * fractions.val + 1e-9));
  const auto n_test = static_cast<std::size_t>(std::floor(n * fractions.test + 1e-9));
  const std::size_t n_train = shuffled.size() - n_val - n_test;

  DatasetSplit split;
  split.train.assign(shuffled.begin(), shuffled.begin() + n_train);
  split.val.assign(shuffled.begin() + n_train, shuffled.begin() + n_train + n_val);
  split.test.assign(shuffled.begin() + n_train + n_val, shuffled.end());
  return split;
}

}  // namespace maskresize::dataset

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maskresize/raster.hpp"
#include "maskresize/rng.hpp"

namespace maskresize::dataset {

struct DatasetEntry {
  std::string stem;
  std::string image_path;
  std::string mask_path;

  bool operator==(const DatasetEntry&) const = default;
};

// Scans dir/images and dir/masks, pairing files whose filenames match after
// stripping the extension, then validates every pair: both files must load,
// the sizes must agree, and every mask value must belong to labels. Entries
// come back sorted by stem. All problems (pairing and per-entry) are
// collected first and reported in one error, so a bad dataset surfaces every
// offender at once. An empty (but well-formed) dataset is returned as an
// empty vector.
std::vector<DatasetEntry> load_dataset(const std::string& dir, const LabelSet& labels);

struct SplitFractions {
  double train = 0.6;
  double val = 0.2;
  double test = 0.2;
};

// Fractions must be non-negative and sum to 1 within 1e-9.
void check_fractions(const SplitFractions& fractions);

struct DatasetSplit {
  std::vector<DatasetEntry> train;
  std::vector<DatasetEntry> val;
  std::vector<DatasetEntry> test;
};

// Shuffles with the seeded generator, then cuts the shuffled order into
// train | val | test. Sizes: floor(n*val), floor(n*test) (with a 1e-9 nudge
// against representation error), remainder to train, so no entry is lost.
DatasetSplit split_dataset(const std::vector<DatasetEntry>& entries,
                           const SplitFractions& fractions, std::uint64_t seed);

}  // namespace maskresize::dataset

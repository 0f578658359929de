#pragma once

// Seeded input generators for property tests.

#include <vector>

#include "maskresize/raster.hpp"
#include "maskresize/rng.hpp"

namespace generators {

using maskresize::Image;
using maskresize::LabelMask;
using maskresize::LabelSet;
using maskresize::Rng;
using maskresize::Size;

inline Image random_image(Rng& rng, Size size, double lo = 0.0, double hi = 255.0) {
  std::vector<double> pixels(static_cast<std::size_t>(size.pixel_count()));
  for (double& p : pixels) p = rng.uniform_real(lo, hi);
  return Image(size, std::move(pixels), lo, hi);
}

// Integer-valued image; survives 8-bit file quantization unchanged.
inline Image random_quantized_image(Rng& rng, Size size) {
  std::vector<double> pixels(static_cast<std::size_t>(size.pixel_count()));
  for (double& p : pixels) p = static_cast<double>(rng.uniform_int(0, 255));
  return Image(size, std::move(pixels));
}

inline Image random_binary_image(Rng& rng, Size size) {
  std::vector<double> pixels(static_cast<std::size_t>(size.pixel_count()));
  for (double& p : pixels) p = rng.bernoulli(0.5) ? 255.0 : 0.0;
  return Image(size, std::move(pixels));
}

inline LabelMask random_mask(Rng& rng, Size size, const LabelSet& labels) {
  std::vector<int> values(static_cast<std::size_t>(size.pixel_count()));
  const auto& members = labels.labels();
  for (int& v : values) {
    v = members[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(members.size()) - 1))];
  }
  return LabelMask(size, std::move(values), labels);
}

}  // namespace generators

#pragma once

#include <cstdint>

#include "maskresize/raster.hpp"
#include "maskresize/rng.hpp"

namespace maskresize::augment {

// Flip and translation are gated independently: the flip fires with
// flip_probability, the translation with translate_probability. Translations
// are integer-valued, so no resampling is involved and mask labels stay
// closed. Draw order per pair is fixed: flip gate, translate gate, dx, dy.
struct AugmentSpec {
  double flip_probability = 0.5;
  double translate_probability = 0.5;
  int translate_lo = -10;
  int translate_hi = 10;
  std::uint64_t rng_seed = 0;
};

// Column x maps to width-1-x; an involution.
Image flip_lr(const Image& img);
LabelMask flip_lr(const LabelMask& mask);

// Integer shift: out(x, y) = in(x - dx, y - dy), vacated pixels take fill.
// The image fill must lie in value_range; the mask fill must be a member of
// the label set.
Image translate(const Image& img, int dx, int dy, double fill);
LabelMask translate(const LabelMask& mask, int dx, int dy, int fill_label);
LabelMask translate(const LabelMask& mask, int dx, int dy);  // fill = background

struct AugmentedPair {
  Image image;
  LabelMask mask;
  // Geometry actually applied; both members always receive the same one.
  bool flipped = false;
  bool translated = false;
  int dx = 0;
  int dy = 0;
};

// One flip draw and one translation draw decide the geometry for BOTH
// members. Applied flip-first. Image vacancies fill with the image's range
// minimum, mask vacancies with the background label.
AugmentedPair augment_pair(const Image& img, const LabelMask& mask,
                           const AugmentSpec& spec, Rng& rng);

// Batch entry point: draws come from Rng(spec.rng_seed).substream(index), so
// pairs can be processed in parallel and out of order without changing the
// result.
AugmentedPair augment_at(const Image& img, const LabelMask& mask,
                         const AugmentSpec& spec, std::uint64_t index);

}  // namespace maskresize::augment

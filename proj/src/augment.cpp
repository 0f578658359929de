#include "maskresize/augment.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maskresize::augment {
namespace {

void check_spec(const AugmentSpec& spec) {
  auto check_p = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                  std::to_string(p));
    }
  };
  check_p(spec.flip_probability, "flip_probability");
  check_p(spec.translate_probability, "translate_probability");
  if (spec.translate_lo > spec.translate_hi) {
    throw std::invalid_argument("translate range is empty: [" +
                                std::to_string(spec.translate_lo) + ", " +
                                std::to_string(spec.translate_hi) + "]");
  }
}

}  // namespace

Image flip_lr(const Image& img) {
  Image out(img.size(), 0.0, img.lo(), img.hi());
  const int w = img.width();
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < w; ++x) {
      out.at(x, y) = img.at(w - 1 - x, y);
    }
  }
  return out;
}

LabelMask flip_lr(const LabelMask& mask) {
  const int w = mask.width();
  std::vector<int> values(mask.size().pixel_count());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < w; ++x) {
      values[static_cast<std::size_t>(y) * w + x] = mask.at(w - 1 - x, y);
    }
  }
  return LabelMask::unchecked(mask.size(), std::move(values), mask.label_set());
}

Image translate(const Image& img, int dx, int dy, double fill) {
  if (fill < img.lo() || fill > img.hi()) {
    throw std::invalid_argument("translate fill " + std::to_string(fill) +
                                " outside value range [" + std::to_string(img.lo()) +
                                ", " + std::to_string(img.hi()) + "]");
  }
  Image out(img.size(), fill, img.lo(), img.hi());
  for (int y = 0; y < img.height(); ++y) {
    const int sy = y - dy;
    if (sy < 0 || sy >= img.height()) continue;
    for (int x = 0; x < img.width(); ++x) {
      const int sx = x - dx;
      if (sx < 0 || sx >= img.width()) continue;
      out.at(x, y) = img.at(sx, sy);
    }
  }
  return out;
}

LabelMask translate(const LabelMask& mask, int dx, int dy, int fill_label) {
  if (!mask.label_set().contains(fill_label)) {
    throw std::invalid_argument("translate fill label " + std::to_string(fill_label) +
                                " is not in the label set");
  }
  std::vector<int> values(mask.size().pixel_count(), fill_label);
  const int w = mask.width();
  for (int y = 0; y < mask.height(); ++y) {
    const int sy = y - dy;
    if (sy < 0 || sy >= mask.height()) continue;
    for (int x = 0; x < w; ++x) {
      const int sx = x - dx;
      if (sx < 0 || sx >= w) continue;
      values[static_cast<std::size_t>(y) * w + x] = mask.at(sx, sy);
    }
  }
  return LabelMask::unchecked(mask.size(), std::move(values), mask.label_set());
}

LabelMask translate(const LabelMask& mask, int dx, int dy) {
  return translate(mask, dx, dy, mask.label_set().background());
}

AugmentedPair augment_pair(const Image& img, const LabelMask& mask,
                           const AugmentSpec& spec, Rng& rng) {
  if (img.size().width != mask.width() || img.size().height != mask.height()) {
    throw std::invalid_argument("augment_pair: image and mask sizes differ");
  }
  check_spec(spec);

  AugmentedPair out{img, mask};
  out.flipped = rng.bernoulli(spec.flip_probability);
  out.translated = rng.bernoulli(spec.translate_probability);
  // dx/dy are drawn unconditionally so the stream position after a pair does
  // not depend on the gate outcomes.
  out.dx = rng.uniform_int(spec.translate_lo, spec.translate_hi);
  out.dy = rng.uniform_int(spec.translate_lo, spec.translate_hi);

  if (out.flipped) {
    out.image = flip_lr(out.image);
    out.mask = flip_lr(out.mask);
  }
  if (out.translated) {
    out.image = translate(out.image, out.dx, out.dy, out.image.lo());
    out.mask = translate(out.mask, out.dx, out.dy);
  } else {
    out.dx = 0;
    out.dy = 0;
  }
  return out;
}

AugmentedPair augment_at(const Image& img, const LabelMask& mask,
                         const AugmentSpec& spec, std::uint64_t index) {
  Rng stream = Rng(spec.rng_seed).substream(index);
  return augment_pair(img, mask, spec, stream);
}

}  // namespace maskresize::augment

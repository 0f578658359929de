#include "maskresize/maskproc.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace maskresize::maskproc {

namespace {

void require_strategy(const MaskResizeStrategy& s) {
  if (s.median_window < 3 || s.median_window % 2 == 0) {
    throw std::invalid_argument("median window must be odd and >= 3, got " +
                                std::to_string(s.median_window));
  }
  if (!(s.threshold_level > 0.0 && s.threshold_level < 1.0)) {
    throw std::invalid_argument("threshold level must lie in (0,1)");
  }
}

Image resize_extra_pixel(const Image& img, const interp::ResizeSpec& spec,
                         const MaskResizeStrategy& strategy) {
  // The pipeline thresholds next, so the binaries must stay in [0, 255].
  interp::ResizeSpec clamped = spec;
  clamped.clamp_output = true;
  if (strategy.kind == StrategyKind::kBilinearProcessed) {
    return interp::resize_bilinear(img, clamped);
  }
  return interp::resize_bicubic(img, clamped, strategy.kernel);
}

}  // namespace

std::vector<Image> split_classes(const LabelMask& mask) {
  const std::vector<int> fg = mask.label_set().foreground();
  std::vector<Image> binaries;
  binaries.reserve(fg.size());
  for (int label : fg) {
    Image bin(mask.size());
    auto& px = bin.pixels();
    const auto& labels = mask.labels();
    for (size_t i = 0; i < labels.size(); ++i) px[i] = labels[i] == label ? 255.0 : 0.0;
    binaries.push_back(std::move(bin));
  }
  return binaries;
}

Image threshold(const Image& img, double level) {
  const double cut = level * 255.0;
  Image out(img.size());
  auto& dst = out.pixels();
  const auto& src = img.pixels();
  for (size_t i = 0; i < src.size(); ++i) dst[i] = src[i] >= cut ? 255.0 : 0.0;
  return out;
}

Image median_filter(const Image& binary, int window) {
  if (window < 3 || window % 2 == 0) {
    throw std::invalid_argument("median window must be odd and >= 3, got " +
                                std::to_string(window));
  }
  const int w = binary.width();
  const int h = binary.height();
  const int r = window / 2;
  const int total = window * window;
  Image out(binary.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int on = 0;
      for (int dy = -r; dy <= r; ++dy) {
        const int sy = std::clamp(y + dy, 0, h - 1);
        for (int dx = -r; dx <= r; ++dx) {
          const int sx = std::clamp(x + dx, 0, w - 1);
          if (binary.at(sx, sy) >= 127.5) ++on;
        }
      }
      // Strict majority of an odd sample count == the median.
      out.at(x, y) = 2 * on > total ? 255.0 : 0.0;
    }
  }
  return out;
}

LabelMask combine_subtract(const std::vector<Image>& binaries, const LabelSet& label_set) {
  const std::vector<int> fg = label_set.foreground();
  if (binaries.size() != fg.size()) {
    throw std::invalid_argument("expected " + std::to_string(fg.size()) +
                                " class binaries, got " + std::to_string(binaries.size()));
  }
  if (binaries.empty()) {
    throw std::invalid_argument("combine_subtract needs at least one class binary");
  }
  const Size size = binaries.front().size();
  for (const Image& bin : binaries) {
    if (!(bin.size() == size)) {
      throw std::invalid_argument("class binaries disagree on raster size");
    }
  }

  std::vector<int> labels(static_cast<size_t>(size.pixel_count()), label_set.background());
  std::vector<bool> claimed(labels.size(), false);
  for (size_t c = 0; c < binaries.size(); ++c) {
    const auto& px = binaries[c].pixels();
    for (size_t i = 0; i < px.size(); ++i) {
      if (px[i] >= 127.5 && !claimed[i]) {
        labels[i] = fg[c];
        claimed[i] = true;
      }
    }
  }
  return LabelMask(size, std::move(labels), label_set);
}

LabelMask mask_resize(const LabelMask& mask, const interp::ResizeSpec& spec,
                      const MaskResizeStrategy& strategy) {
  require_strategy(strategy);

  if (spec.target == mask.size()) {
    // Identity resize introduces no extra-pixel values, so the cleanup
    // pipeline has nothing to fix; running it anyway could still nibble
    // thin structures through the median filter. Every strategy is exact
    // here by definition.
    return mask;
  }

  if (strategy.kind == StrategyKind::kNearest) {
    const Image resized = interp::resize_nn(labels_to_image(mask), spec);
    // NN only copies label values, so the rounded cast is exact and closed.
    const LabelMask out = mask_from_image_rounded(resized, mask.label_set());
    return LabelMask(out.size(), out.labels(), out.label_set());
  }

  if (mask.label_set().count() == 1) {
    // Only the background exists; nothing to resample but the raster itself.
    return LabelMask::filled(spec.target, mask.label_set());
  }

  std::vector<Image> binaries = split_classes(mask);
  for (Image& bin : binaries) {
    bin = resize_extra_pixel(bin, spec, strategy);
    bin = threshold(bin, strategy.threshold_level);
    bin = median_filter(bin, strategy.median_window);
  }
  return combine_subtract(binaries, mask.label_set());
}

}  // namespace maskresize::maskproc

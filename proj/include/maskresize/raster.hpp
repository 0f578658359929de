#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace maskresize {

struct Size {
  int width = 0;
  int height = 0;

  bool operator==(const Size&) const = default;
  std::int64_t pixel_count() const {
    return static_cast<std::int64_t>(width) * height;
  }
};

// Throws std::invalid_argument unless both dimensions are at least 1.
void require_valid_size(Size size);

// W x H grayscale raster of real-valued intensities, row-major, top-left
// origin, y growing downward. Intensities stay real throughout processing;
// 8-bit quantization happens only at file I/O. value_range is the admissible
// interval enforced by clamping operations, not a tight bound.
class Image {
 public:
  explicit Image(Size size, double fill = 0.0, double lo = 0.0, double hi = 255.0);
  Image(Size size, std::vector<double> pixels, double lo = 0.0, double hi = 255.0);

  Size size() const { return size_; }
  int width() const { return size_.width; }
  int height() const { return size_.height; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  // Bounds are a caller contract, not a data condition.
  double at(int x, int y) const {
    assert(x >= 0 && x < size_.width && y >= 0 && y < size_.height);
    return pixels_[static_cast<size_t>(y) * size_.width + x];
  }
  double& at(int x, int y) {
    assert(x >= 0 && x < size_.width && y >= 0 && y < size_.height);
    return pixels_[static_cast<size_t>(y) * size_.width + x];
  }

  const std::vector<double>& pixels() const { return pixels_; }
  std::vector<double>& pixels() { return pixels_; }

  bool operator==(const Image&) const = default;

 private:
  Size size_;
  double lo_;
  double hi_;
  std::vector<double> pixels_;
};

// Ordered set of admissible class labels in [0, 255]. Position is priority:
// earlier entries win overlap resolution. Exactly one label is the
// background; by default the last entry.
class LabelSet {
 public:
  explicit LabelSet(std::vector<int> labels);
  LabelSet(std::vector<int> labels, int background);

  // {255, 128, 0} with background 0.
  static LabelSet default_three_class();

  int count() const { return static_cast<int>(labels_.size()); }
  const std::vector<int>& labels() const { return labels_; }
  int background() const { return background_; }
  bool contains(int label) const;
  // Index in priority order, or -1.
  int index_of(int label) const;
  // Non-background labels, in priority order.
  std::vector<int> foreground() const;

  bool operator==(const LabelSet&) const = default;

 private:
  std::vector<int> labels_;
  int background_;
};

// W x H raster of discrete class labels. The checked constructor enforces the
// central contract that every pixel's label belongs to the declared set;
// unchecked() exists for resampling internals and diagnostics that must hold
// not-yet-validated data.
class LabelMask {
 public:
  // Throws std::invalid_argument if any pixel label is outside label_set.
  LabelMask(Size size, std::vector<int> labels, LabelSet label_set);

  static LabelMask unchecked(Size size, std::vector<int> labels, LabelSet label_set);

  // All-background mask.
  static LabelMask filled(Size size, LabelSet label_set);

  Size size() const { return size_; }
  int width() const { return size_.width; }
  int height() const { return size_.height; }

  int at(int x, int y) const {
    assert(x >= 0 && x < size_.width && y >= 0 && y < size_.height);
    return labels_[static_cast<size_t>(y) * size_.width + x];
  }

  const std::vector<int>& labels() const { return labels_; }
  const LabelSet& label_set() const { return set_; }

  bool operator==(const LabelMask&) const = default;

 private:
  struct Unchecked {};
  LabelMask(Unchecked, Size size, std::vector<int> labels, LabelSet label_set);

  Size size_;
  std::vector<int> labels_;
  LabelSet set_;
};

struct MaskViolation {
  int x = 0;
  int y = 0;
  int value = 0;
  bool operator==(const MaskViolation&) const = default;
};

struct MaskValidation {
  bool ok = true;
  std::vector<MaskViolation> violations;  // every offending pixel, scan order
};

// Violations are data, not errors: reports every pixel whose label falls
// outside the mask's declared set.
MaskValidation mask_validate(const LabelMask& mask);

// Pixel-wise copy of integer labels as real intensities.
Image labels_to_image(const LabelMask& mask);

// Nearest-integer cast of a resampled raster back to labels. Performs no
// validation; pair with mask_validate when closure is not guaranteed.
LabelMask mask_from_image_rounded(const Image& img, const LabelSet& label_set);

}  // namespace maskresize

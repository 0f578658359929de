#include "maskresize/raster.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace maskresize {

void require_valid_size(Size size) {
  if (size.width < 1 || size.height < 1) {
    std::ostringstream msg;
    msg << "raster size must be at least 1x1, got " << size.width << "x" << size.height;
    throw std::invalid_argument(msg.str());
  }
}

namespace {

std::string describe_set(const LabelSet& set) {
  std::ostringstream out;
  out << "{";
  for (size_t i = 0; i < set.labels().size(); ++i) {
    if (i) out << ",";
    out << set.labels()[i];
  }
  out << "}";
  return out.str();
}

}  // namespace

Image::Image(Size size, double fill, double lo, double hi)
    : size_(size), lo_(lo), hi_(hi) {
  require_valid_size(size);
  if (!(lo <= hi)) throw std::invalid_argument("image value_range is empty");
  pixels_.assign(static_cast<size_t>(size.pixel_count()), fill);
}

Image::Image(Size size, std::vector<double> pixels, double lo, double hi)
    : size_(size), lo_(lo), hi_(hi), pixels_(std::move(pixels)) {
  require_valid_size(size);
  if (!(lo <= hi)) throw std::invalid_argument("image value_range is empty");
  if (pixels_.size() != static_cast<size_t>(size.pixel_count())) {
    std::ostringstream msg;
    msg << "pixel buffer holds " << pixels_.size() << " values, expected "
        << size.pixel_count() << " for " << size.width << "x" << size.height;
    throw std::invalid_argument(msg.str());
  }
}

LabelSet::LabelSet(std::vector<int> labels)
    : LabelSet(labels, labels.empty() ? 0 : labels.back()) {}

LabelSet::LabelSet(std::vector<int> labels, int background)
    : labels_(std::move(labels)), background_(background) {
  if (labels_.empty()) throw std::invalid_argument("label set must not be empty");
  for (int label : labels_) {
    if (label < 0 || label > 255) {
      throw std::invalid_argument("label " + std::to_string(label) + " outside [0,255]");
    }
  }
  auto sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("label set contains duplicate labels");
  }
  if (!contains(background_)) {
    throw std::invalid_argument("background label " + std::to_string(background_) +
                                " is not a member of the label set");
  }
}

LabelSet LabelSet::default_three_class() { return LabelSet({255, 128, 0}, 0); }

bool LabelSet::contains(int label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

int LabelSet::index_of(int label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

std::vector<int> LabelSet::foreground() const {
  std::vector<int> fg;
  fg.reserve(labels_.size() - 1);
  for (int label : labels_) {
    if (label != background_) fg.push_back(label);
  }
  return fg;
}

LabelMask::LabelMask(Size size, std::vector<int> labels, LabelSet label_set)
    : LabelMask(Unchecked{}, size, std::move(labels), std::move(label_set)) {
  const MaskValidation check = mask_validate(*this);
  if (!check.ok) {
    const MaskViolation& first = check.violations.front();
    std::ostringstream msg;
    msg << "mask contains label " << first.value << " at pixel (" << first.x << ","
        << first.y << "); " << check.violations.size()
        << " offending pixel(s) total; label set " << describe_set(set_);
    throw std::invalid_argument(msg.str());
  }
}

LabelMask::LabelMask(Unchecked, Size size, std::vector<int> labels, LabelSet label_set)
    : size_(size), labels_(std::move(labels)), set_(std::move(label_set)) {
  require_valid_size(size);
  if (labels_.size() != static_cast<size_t>(size.pixel_count())) {
    std::ostringstream msg;
    msg << "label buffer holds " << labels_.size() << " values, expected "
        << size.pixel_count() << " for " << size.width << "x" << size.height;
    throw std::invalid_argument(msg.str());
  }
}

LabelMask LabelMask::unchecked(Size size, std::vector<int> labels, LabelSet label_set) {
  return LabelMask(Unchecked{}, size, std::move(labels), std::move(label_set));
}

LabelMask LabelMask::filled(Size size, LabelSet label_set) {
  std::vector<int> labels(static_cast<size_t>(size.pixel_count()), label_set.background());
  return LabelMask(Unchecked{}, size, std::move(labels), std::move(label_set));
}

MaskValidation mask_validate(const LabelMask& mask) {
  MaskValidation result;
  const int w = mask.width();
  const auto& labels = mask.labels();
  for (size_t i = 0; i < labels.size(); ++i) {
    if (!mask.label_set().contains(labels[i])) {
      const int idx = static_cast<int>(i);
      result.violations.push_back({idx % w, idx / w, labels[i]});
    }
  }
  result.ok = result.violations.empty();
  return result;
}

Image labels_to_image(const LabelMask& mask) {
  std::vector<double> pixels(mask.labels().size());
  std::transform(mask.labels().begin(), mask.labels().end(), pixels.begin(),
                 [](int v) { return static_cast<double>(v); });
  return Image(mask.size(), std::move(pixels));
}

LabelMask mask_from_image_rounded(const Image& img, const LabelSet& label_set) {
  std::vector<int> labels(img.pixels().size());
  std::transform(img.pixels().begin(), img.pixels().end(), labels.begin(),
                 [](double v) { return static_cast<int>(std::llround(v)); });
  return LabelMask::unchecked(img.size(), std::move(labels), label_set);
}

}  // namespace maskresize

#pragma once

#include <stdexcept>
#include <string>

#include "maskresize/raster.hpp"

namespace maskresize::io {

// Filesystem or codec failure (missing file, truncated stream, bad CRC,
// unsupported PNG layout). Malformed *values* inside an otherwise readable
// file (e.g. a mask pixel outside the label set) throw std::invalid_argument
// instead.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grayscale-only storage: PNG (8-bit grayscale, non-interlaced) and binary
// PGM (P5, maxval 255). Pixel values load as doubles in [0, 255].
Image load_image(const std::string& path);                   // dispatch on magic bytes
void save_image(const Image& img, const std::string& path);  // dispatch on extension

// Values are rounded to the nearest integer and checked against the label
// set; offending pixels are reported with coordinates.
LabelMask load_mask(const std::string& path, const LabelSet& labels);
void save_mask(const LabelMask& mask, const std::string& path);

// Format-specific entry points, used by the dispatchers above.
Image load_png(const std::string& path);
void save_png(const Image& img, const std::string& path);
Image load_pgm(const std::string& path);
void save_pgm(const Image& img, const std::string& path);

}  // namespace maskresize::io

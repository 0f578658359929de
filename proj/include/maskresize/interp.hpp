#pragma once

#include "maskresize/raster.hpp"

namespace maskresize::interp {

// Destination sample i maps to source coordinate (i + 0.5) * scale - 0.5.
// This convention makes same-size resizes exact sample-for-sample and is
// symmetric under flips. Metric values downstream depend on it.
enum class CoordMapping { kHalfPixelCenters };

// Out-of-range taps replicate the border pixel.
enum class BoundaryPolicy { kClampToEdge };

struct ResizeSpec {
  Size target;
  CoordMapping mapping = CoordMapping::kHalfPixelCenters;
  BoundaryPolicy boundary = BoundaryPolicy::kClampToEdge;
  // Clamp the final raster into value_range intersected with the input's
  // actual [min, max]; keeps cubic overshoot from leaving either interval.
  bool clamp_output = true;
};

// Sharpness coefficient of the piecewise cubic convolution kernel.
// a = -0.5 gives the Catmull-Rom-like member of the family.
struct CubicKernelParams {
  double a = -0.5;
};

// Half-pixel-centers source coordinate for destination index dst_index.
double map_coord(int dst_index, int src_extent, int dst_extent);

// Kernel weight at offset t. Support (-2, 2); weight(0) = 1 and the weight
// vanishes at every other integer, so the kernel interpolates.
//   |t| <= 1:      (a+2)|t|^3 - (a+3)|t|^2 + 1
//   1 < |t| < 2:   a|t|^3 - 5a|t|^2 + 8a|t| - 4a
//   otherwise:     0
double cubic_weight(double t, const CubicKernelParams& params = {});

// Nearest neighbor: each output pixel copies the source pixel nearest to its
// mapped coordinate (ties round half up). Output value set is a subset of the
// input value set.
Image resize_nn(const Image& img, const ResizeSpec& spec);

// Area-weighted average of the 2x2 neighborhood around the mapped coordinate.
Image resize_bilinear(const Image& img, const ResizeSpec& spec);

// Separable 4x4 cubic convolution using cubic_weight.
Image resize_bicubic(const Image& img, const ResizeSpec& spec,
                     const CubicKernelParams& params = {});

}  // namespace maskresize::interp

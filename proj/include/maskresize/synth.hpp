#pragma once

#include <cstdint>

#include "maskresize/raster.hpp"
#include "maskresize/rng.hpp"

namespace maskresize::synth {

// Shapes live in unit coordinates ([0,1] across each image axis), so one
// sampled shape rasterizes consistently at any resolution; a pixel (x, y) in
// a WxH raster samples the shape at ((x+0.5)/W, (y+0.5)/H).
struct EllipseParams {
  double cx = 0.5;
  double cy = 0.5;
  double ax = 0.2;  // semi-axis along the ellipse x direction, must be > 0
  double ay = 0.2;  // semi-axis along the ellipse y direction, must be > 0
  double theta = 0.0;  // rotation in radians
};

// Two concentric regions: the inner ellipse is the outer one scaled by
// inner_scale about the shared center. inner_scale 0 degenerates to a single
// region.
struct NestedEllipseShape {
  EllipseParams outer;
  double inner_scale = 0.5;  // in [0, 1]
};

struct SynthBounds {
  double center_lo = 0.40;
  double center_hi = 0.60;
  double axis_lo = 0.12;
  double axis_hi = 0.28;
  double inner_scale_lo = 0.40;
  double inner_scale_hi = 0.65;
};

void check_bounds(const SynthBounds& bounds);

// Draw order is part of the contract: cx, cy, ax, ay, theta (uniform over
// [0, pi)), inner_scale.
NestedEllipseShape sample_shape(Rng& rng, const SynthBounds& bounds);

// Shape for dataset index `index` under `seed`, independent of how many
// other shapes were sampled.
NestedEllipseShape shape_at(std::uint64_t seed, std::uint64_t index,
                            const SynthBounds& bounds);

// Inner region takes the first foreground label, the remaining outer ring
// the second (or the first again if the set has a single foreground class).
LabelMask rasterize_shape(const NestedEllipseShape& shape, Size size,
                          const LabelSet& labels);

// One seeded mask in a single call: the shape is drawn from `bounds` with
// `seed` (same stream as shape_at(seed, 0, bounds)) and rasterized.
LabelMask synth_mask(const SynthBounds& bounds, Size size, const LabelSet& labels,
                     std::uint64_t seed);

}  // namespace maskresize::synth

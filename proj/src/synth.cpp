#include "maskresize/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maskresize::synth {
namespace {

void require_range(double lo, double hi, const char* name) {
  if (!(lo <= hi)) {
    throw std::invalid_argument(std::string(name) + " bounds are empty: [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

}  // namespace

void check_bounds(const SynthBounds& bounds) {
  require_range(bounds.center_lo, bounds.center_hi, "center");
  require_range(bounds.axis_lo, bounds.axis_hi, "axis");
  require_range(bounds.inner_scale_lo, bounds.inner_scale_hi, "inner_scale");
  if (bounds.axis_lo <= 0.0) {
    throw std::invalid_argument("axis bounds must be positive");
  }
  if (bounds.inner_scale_lo < 0.0 || bounds.inner_scale_hi > 1.0) {
    throw std::invalid_argument("inner_scale bounds must lie in [0, 1]");
  }
}

NestedEllipseShape sample_shape(Rng& rng, const SynthBounds& bounds) {
  check_bounds(bounds);
  NestedEllipseShape shape;
  shape.outer.cx = rng.uniform_real(bounds.center_lo, bounds.center_hi);
  shape.outer.cy = rng.uniform_real(bounds.center_lo, bounds.center_hi);
  shape.outer.ax = rng.uniform_real(bounds.axis_lo, bounds.axis_hi);
  shape.outer.ay = rng.uniform_real(bounds.axis_lo, bounds.axis_hi);
  shape.outer.theta = rng.uniform_real(0.0, std::numbers::pi);
  shape.inner_scale = rng.uniform_real(bounds.inner_scale_lo, bounds.inner_scale_hi);
  return shape;
}

NestedEllipseShape shape_at(std::uint64_t seed, std::uint64_t index,
                            const SynthBounds& bounds) {
  Rng stream = Rng(seed).substream(index);
  return sample_shape(stream, bounds);
}

LabelMask rasterize_shape(const NestedEllipseShape& shape, Size size,
                          const LabelSet& labels) {
  require_valid_size(size);
  if (!(shape.outer.ax > 0.0) || !(shape.outer.ay > 0.0)) {
    throw std::invalid_argument("ellipse semi-axes must be positive");
  }
  if (shape.inner_scale < 0.0 || shape.inner_scale > 1.0) {
    throw std::invalid_argument("inner_scale must lie in [0, 1], got " +
                                std::to_string(shape.inner_scale));
  }
  const auto& fg = labels.foreground();
  if (fg.empty()) {
    throw std::invalid_argument("rasterize_shape needs at least one foreground label");
  }
  const int inner_label = fg[0];
  const int outer_label = fg.size() >= 2 ? fg[1] : fg[0];

  const double cos_t = std::cos(shape.outer.theta);
  const double sin_t = std::sin(shape.outer.theta);
  const double s = shape.inner_scale;
  std::vector<int> values(size.pixel_count(), labels.background());
  for (int y = 0; y < size.height; ++y) {
    const double v = (y + 0.5) / size.height;
    for (int x = 0; x < size.width; ++x) {
      const double u = (x + 0.5) / size.width;
      const double du = u - shape.outer.cx;
      const double dv = v - shape.outer.cy;
      // Rotate into the ellipse frame (inverse rotation by theta).
      const double xr = du * cos_t + dv * sin_t;
      const double yr = -du * sin_t + dv * cos_t;
      const double qx = xr / shape.outer.ax;
      const double qy = yr / shape.outer.ay;
      const double q = qx * qx + qy * qy;
      if (q <= 1.0) {
        const bool inside_inner = s > 0.0 && q <= s * s;
        values[static_cast<std::size_t>(y) * size.width + x] =
            inside_inner ? inner_label : outer_label;
      }
    }
  }
  return LabelMask::unchecked(size, std::move(values), labels);
}

LabelMask synth_mask(const SynthBounds& bounds, Size size, const LabelSet& labels,
                     std::uint64_t seed) {
  return rasterize_shape(shape_at(seed, 0, bounds), size, labels);
}

}  // namespace maskresize::synth

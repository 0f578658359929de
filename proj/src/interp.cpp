#include "maskresize/interp.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace maskresize::interp {

namespace {

void require_valid_target(const ResizeSpec& spec) {
  if (spec.target.width < 1 || spec.target.height < 1) {
    throw std::invalid_argument("resize target must be at least 1x1");
  }
}

int clamp_index(int i, int extent) { return std::clamp(i, 0, extent - 1); }

// Nearest source index per destination index. The mapped coordinate is
// clamped into [0, extent-1] first, then rounded half up, so ties are
// deterministic and the result needs no further clamping.
std::vector<int> nn_taps(int src_extent, int dst_extent) {
  std::vector<int> taps(static_cast<size_t>(dst_extent));
  for (int i = 0; i < dst_extent; ++i) {
    const double c = std::clamp(map_coord(i, src_extent, dst_extent), 0.0,
                                static_cast<double>(src_extent - 1));
    taps[static_cast<size_t>(i)] = static_cast<int>(std::floor(c + 0.5));
  }
  return taps;
}

template <int N>
struct FilterTaps {
  std::vector<std::array<int, N>> index;
  std::vector<std::array<double, N>> weight;
};

FilterTaps<2> linear_taps(int src_extent, int dst_extent) {
  FilterTaps<2> taps;
  taps.index.resize(static_cast<size_t>(dst_extent));
  taps.weight.resize(static_cast<size_t>(dst_extent));
  for (int i = 0; i < dst_extent; ++i) {
    const double c = map_coord(i, src_extent, dst_extent);
    const double base = std::floor(c);
    const double f = c - base;
    const int i0 = static_cast<int>(base);
    taps.index[i] = {clamp_index(i0, src_extent), clamp_index(i0 + 1, src_extent)};
    taps.weight[i] = {1.0 - f, f};
  }
  return taps;
}

FilterTaps<4> cubic_taps(int src_extent, int dst_extent, const CubicKernelParams& params) {
  FilterTaps<4> taps;
  taps.index.resize(static_cast<size_t>(dst_extent));
  taps.weight.resize(static_cast<size_t>(dst_extent));
  for (int i = 0; i < dst_extent; ++i) {
    const double c = map_coord(i, src_extent, dst_extent);
    const int i0 = static_cast<int>(std::floor(c));
    for (int k = 0; k < 4; ++k) {
      const int tap = i0 - 1 + k;
      taps.index[i][k] = clamp_index(tap, src_extent);
      taps.weight[i][k] = cubic_weight(c - tap, params);
    }
  }
  return taps;
}

// Separable pass over one axis. Horizontal = true resizes widths, rows
// unchanged; false resizes heights, columns unchanged.
template <int N>
std::vector<double> resample_axis(const std::vector<double>& src, int src_w, int src_h,
                                  const FilterTaps<N>& taps, int dst_extent,
                                  bool horizontal) {
  const int out_w = horizontal ? dst_extent : src_w;
  const int out_h = horizontal ? src_h : dst_extent;
  std::vector<double> dst(static_cast<size_t>(out_w) * out_h);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      const int along = horizontal ? x : y;
      const auto& idx = taps.index[static_cast<size_t>(along)];
      const auto& w = taps.weight[static_cast<size_t>(along)];
      double acc = 0.0;
      for (int k = 0; k < N; ++k) {
        const size_t src_pos = horizontal
                                   ? static_cast<size_t>(y) * src_w + idx[k]
                                   : static_cast<size_t>(idx[k]) * src_w + x;
        acc += w[k] * src[src_pos];
      }
      dst[static_cast<size_t>(y) * out_w + x] = acc;
    }
  }
  return dst;
}

void clamp_to_input_range(const Image& src, std::vector<double>& pixels) {
  const auto [min_it, max_it] = std::minmax_element(src.pixels().begin(), src.pixels().end());
  double lo = std::max(src.lo(), *min_it);
  double hi = std::min(src.hi(), *max_it);
  if (lo > hi) {  // input violated its value_range; fall back to the range alone
    lo = src.lo();
    hi = src.hi();
  }
  for (double& v : pixels) v = std::clamp(v, lo, hi);
}

template <int N>
Image resize_separable(const Image& img, const ResizeSpec& spec,
                       const FilterTaps<N>& x_taps, const FilterTaps<N>& y_taps) {
  std::vector<double> mid = resample_axis<N>(img.pixels(), img.width(), img.height(),
                                             x_taps, spec.target.width, true);
  std::vector<double> out = resample_axis<N>(mid, spec.target.width, img.height(),
                                             y_taps, spec.target.height, false);
  if (spec.clamp_output) clamp_to_input_range(img, out);
  return Image(spec.target, std::move(out), img.lo(), img.hi());
}

}  // namespace

double map_coord(int dst_index, int src_extent, int dst_extent) {
  assert(src_extent >= 1 && dst_extent >= 1);
  assert(dst_index >= 0 && dst_index < dst_extent);
  const double scale = static_cast<double>(src_extent) / dst_extent;
  return (dst_index + 0.5) * scale - 0.5;
}

double cubic_weight(double t, const CubicKernelParams& params) {
  const double a = params.a;
  const double u = std::fabs(t);
  if (u <= 1.0) {
    return ((a + 2.0) * u - (a + 3.0)) * u * u + 1.0;
  }
  if (u < 2.0) {
    return ((a * u - 5.0 * a) * u + 8.0 * a) * u - 4.0 * a;
  }
  return 0.0;
}

Image resize_nn(const Image& img, const ResizeSpec& spec) {
  require_valid_target(spec);
  const std::vector<int> x_taps = nn_taps(img.width(), spec.target.width);
  const std::vector<int> y_taps = nn_taps(img.height(), spec.target.height);
  std::vector<double> out(static_cast<size_t>(spec.target.pixel_count()));
  for (int y = 0; y < spec.target.height; ++y) {
    const double* src_row = img.pixels().data() + static_cast<size_t>(y_taps[y]) * img.width();
    double* dst_row = out.data() + static_cast<size_t>(y) * spec.target.width;
    for (int x = 0; x < spec.target.width; ++x) dst_row[x] = src_row[x_taps[x]];
  }
  // Copies never leave the input range; no clamp needed.
  return Image(spec.target, std::move(out), img.lo(), img.hi());
}

Image resize_bilinear(const Image& img, const ResizeSpec& spec) {
  require_valid_target(spec);
  return resize_separable<2>(img, spec, linear_taps(img.width(), spec.target.width),
                             linear_taps(img.height(), spec.target.height));
}

Image resize_bicubic(const Image& img, const ResizeSpec& spec, const CubicKernelParams& params) {
  require_valid_target(spec);
  return resize_separable<4>(img, spec, cubic_taps(img.width(), spec.target.width, params),
                             cubic_taps(img.height(), spec.target.height, params));
}

}  // namespace maskresize::interp

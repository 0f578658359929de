#pragma once

#include <vector>

#include "maskresize/interp.hpp"
#include "maskresize/raster.hpp"

namespace maskresize::maskproc {

enum class StrategyKind {
  kNearest,            // value-set closure for free; no post-processing
  kBicubicProcessed,   // extra-pixel resize + label cleanup pipeline
  kBilinearProcessed,
};

struct MaskResizeStrategy {
  StrategyKind kind = StrategyKind::kNearest;
  interp::CubicKernelParams kernel;  // kBicubicProcessed only
  int median_window = 3;             // odd, >= 3
  double threshold_level = 0.5;      // fraction of full scale, in (0, 1)
};

// One binary image (255 inside, 0 outside) per non-background label, in
// priority order. List length is |label_set| - 1.
std::vector<Image> split_classes(const LabelMask& mask);

// 255 where pixel >= level * 255, else 0. The comparison is inclusive so the
// exact midpoint is deterministic. Expects values in [0, 255].
Image threshold(const Image& img, double level);

// Median of the window x window neighborhood under clamp-to-edge padding.
// Input must be binary {0, 255}; the median of an odd count of binary values
// is binary, so the output is too.
Image median_filter(const Image& binary, int window);

// Recombines per-class binaries into a mask. Labels are assigned in priority
// order; pixels already claimed by a higher-priority label are subtracted
// from every lower-priority binary before it is assigned. Binaries must share
// one size and arrive in priority order, one per non-background label.
LabelMask combine_subtract(const std::vector<Image>& binaries, const LabelSet& label_set);

// Resizes a discrete mask while keeping its label set closed.
//   kNearest:   labels -> resize_nn -> exact cast back.
//   processed:  split_classes -> per-class extra-pixel resize -> threshold
//               -> median_filter -> combine_subtract.
// A same-size resize returns the input unchanged for every strategy. The
// output always validates against the input's label set.
LabelMask mask_resize(const LabelMask& mask, const interp::ResizeSpec& spec,
                      const MaskResizeStrategy& strategy);

}  // namespace maskresize::maskproc

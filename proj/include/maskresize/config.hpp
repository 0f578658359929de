#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "maskresize/experiment.hpp"

namespace maskresize::config {

// Flat key=value format, one assignment per line; '#' starts a comment and
// blank lines are ignored. Unknown and repeated keys are errors. Every key is
// optional and falls back to the ExperimentConfig default.
//
//   mode            synthetic | dataset
//   shapes          item count for synthetic mode
//   seed            unsigned 64-bit
//   source_size     WxH
//   target_sizes    comma list of WxH (ignored in dataset mode)
//   strategies      comma list of NN-NN | BIC-NN | BIC-BIC
//   labels          comma list of 0..255, priority order, background last
//   median_window   odd integer >= 3
//   threshold_level fraction in (0, 1)
//   bf_tolerance    auto | pixels
//   split           train,val,test fractions summing to 1
//   dataset_dir     directory with images/ and masks/
//   format          csv | json
//   output          report path
//   synth_center    lo,hi       (unit coordinates)
//   synth_axis      lo,hi
//   synth_inner_scale lo,hi
experiment::ExperimentConfig parse_text(const std::string& text);

// parse_text over the file contents; missing file raises io::IoError.
experiment::ExperimentConfig parse_file(const std::string& path);

// Every result-determining key in sorted order with normalized value
// spelling, one per line. Independent of how (or whether) the value appeared
// in the source file; output and format are excluded because they do not
// affect the computed scores.
std::string canonical_text(const experiment::ExperimentConfig& config);

std::uint64_t fnv1a64(std::string_view bytes);

// FNV-1a/64 of canonical_text, as 16 hex digits. Stamped into reports so a
// result file identifies the configuration that produced it.
std::string hash_hex(const experiment::ExperimentConfig& config);

}  // namespace maskresize::config

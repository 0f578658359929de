#pragma once

#include <string>

#include "maskresize/experiment.hpp"

namespace maskresize::report {

using experiment::ComparisonReport;
using experiment::ReportFormat;

// CSV with leading '#' metadata comments, a value section
// (target_size,strategy,label,metric,value), and, when NN-NN is among the
// strategies, a percentage-increase section against that baseline. Scores
// print with six decimals; undefined scores print as empty cells. The
// percentage cells are computed from the rounded six-decimal values, so the
// file is self-consistent. Output is byte-stable for a given report.
std::string to_csv(const ComparisonReport& report);

// Same content as JSON, with scores at full precision (null = undefined) and
// percentages computed from the full-precision values.
std::string to_json_text(const ComparisonReport& report);

// Inverse of to_json_text over the value section; derived percentage blocks
// are ignored. to_json_text -> from_json_text reproduces the report exactly.
ComparisonReport from_json_text(const std::string& text);

// Serializes in the requested format and writes the file (io::IoError on
// filesystem failure).
void write_report(const ComparisonReport& report, ReportFormat format,
                  const std::string& path);

}  // namespace maskresize::report

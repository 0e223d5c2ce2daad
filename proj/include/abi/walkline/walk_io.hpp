#pragma once

#include <iosfwd>
#include <vector>

#include "abi/walkline/scoring.hpp"

namespace abi::walkline {

// JSONL, one object per line: samples as {"t","x","y"}, metrics with the
// WalkTrialMetrics field names.
void write_trace_jsonl(std::ostream& out, const std::vector<WalkSample>& trace);
std::vector<WalkSample> read_trace_jsonl(std::istream& in);

void write_metrics_jsonl(std::ostream& out, const std::vector<WalkTrialMetrics>& metrics);
std::vector<WalkTrialMetrics> read_metrics_jsonl(std::istream& in);

}  // namespace abi::walkline

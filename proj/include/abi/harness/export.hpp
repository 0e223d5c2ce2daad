#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "abi/harness/records.hpp"
#include "abi/harness/stats.hpp"

namespace abi::harness {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

// CSV header: technique, condition columns (sorted), target, success, tct,
// metric columns (sorted), seed, participant, trial. Columns are the union
// over all records; a metric a record lacks is left empty.
void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_records_csv(std::istream& in);

void write_records_jsonl(std::ostream& out, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_records_jsonl(std::istream& in);

// Group columns in the given order, then n, mean, sd, se, ci_lo, ci_hi;
// values that need n >= 2 are empty for single-record groups.
void write_stats_csv(std::ostream& out, const std::vector<std::string>& group_by,
                     const std::vector<GroupStats>& stats);

}  // namespace abi::harness

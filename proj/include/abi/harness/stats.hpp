#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abi/harness/records.hpp"

namespace abi::harness {

/// Descriptive statistics; sd, se and the interval need n >= 2.
struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> sd;  // n - 1 denominator
  std::optional<double> se;
  std::optional<double> ci_lo;
  std::optional<double> ci_hi;
};

SummaryStats describe(std::span<const double> values, double confidence = 0.95);

/// Student-t distribution function.
double student_t_cdf(double t, double df);
/// Inverse of student_t_cdf found by bisection.
double student_t_quantile(double p, double df);

struct GroupStats {
  std::map<std::string, double> group;
  SummaryStats stats;
};

/// Summary of one metric per combination of the given condition keys,
/// groups in ascending key order.
std::vector<GroupStats> describe(std::span<const TrialRecord> records, const std::vector<std::string>& group_by,
                                 const std::string& metric, double confidence = 0.95);

}  // namespace abi::harness

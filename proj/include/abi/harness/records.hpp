#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace abi::harness {

enum class Technique { Proximity, Foottap, Walkline };

const char* to_string(Technique t);
/// Throws invalid-config for unknown names.
Technique technique_from_string(std::string_view name);

/// Scored outcome of one simulated trial.
struct TrialRecord {
  Technique technique = Technique::Walkline;
  std::map<std::string, double> condition;
  std::string target;
  bool success = false;
  double tct = 0.0;  // s
  std::map<std::string, double> metrics;
  std::uint64_t seed = 0;
  int participant = 0;
  int trial = 0;  // index within the condition cell

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Canonical order: technique, condition, trial, participant.
bool canonical_less(const TrialRecord& a, const TrialRecord& b);

/// Value of a named metric: "success" (0/1), "tct", or an extra metric.
/// Throws invalid-argument when the record has no such metric.
double metric_value(const TrialRecord& r, std::string_view metric);

}  // namespace abi::harness

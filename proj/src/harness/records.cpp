#include "abi/harness/records.hpp"

#include <tuple>

#include "abi/common/error.hpp"

namespace abi::harness {

const char* to_string(Technique t) {
  switch (t) {
    case Technique::Proximity: return "proximity";
    case Technique::Foottap: return "foottap";
    case Technique::Walkline: return "walkline";
  }
  return "?";
}

Technique technique_from_string(std::string_view name) {
  for (auto t : {Technique::Proximity, Technique::Foottap, Technique::Walkline}) {
    if (name == to_string(t)) return t;
  }
  fail(ErrorKind::InvalidConfig, "unknown technique: " + std::string(name));
}

bool canonical_less(const TrialRecord& a, const TrialRecord& b) {
  return std::tie(a.technique, a.condition, a.trial, a.participant) <
         std::tie(b.technique, b.condition, b.trial, b.participant);
}

double metric_value(const TrialRecord& r, std::string_view metric) {
  if (metric == "success") return r.success ? 1.0 : 0.0;
  if (metric == "tct") return r.tct;
  const auto it = r.metrics.find(std::string(metric));
  if (it == r.metrics.end()) fail(ErrorKind::InvalidArgument, "record has no metric " + std::string(metric));
  return it->second;
}

}  // namespace abi::harness

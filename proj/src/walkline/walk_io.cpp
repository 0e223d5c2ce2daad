#include "abi/walkline/walk_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "abi/common/error.hpp"

namespace abi::walkline {

using nlohmann::json;

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string& text, const Enum (&values)[N]) {
  for (Enum v : values)
    if (text == to_string(v)) return v;
  fail(ErrorKind::InvalidData, "unknown value '" + text + "'");
}

template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      fail(ErrorKind::InvalidData, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace

void write_trace_jsonl(std::ostream& out, const std::vector<WalkSample>& trace) {
  for (const auto& s : trace) out << json{{"t", s.t}, {"x", s.x}, {"y", s.y}}.dump() << '\n';
}

std::vector<WalkSample> read_trace_jsonl(std::istream& in) {
  std::vector<WalkSample> trace;
  for_each_line(in, [&](const json& j) {
    trace.push_back({j.at("t").get<double>(), j.at("x").get<double>(), j.at("y").get<double>()});
  });
  return trace;
}

void write_metrics_jsonl(std::ostream& out, const std::vector<WalkTrialMetrics>& metrics) {
  for (const auto& m : metrics) {
    json j;
    j["success"] = m.success;
    j["selected_lane"] = m.selected_lane ? json(*m.selected_lane) : json(nullptr);
    j["tct"] = m.tct;
    j["walked_distance"] = m.walked_distance;
    j["longitudinal_displacement"] = m.longitudinal_displacement;
    j["stabilizing_error"] = m.stabilizing_error;
    j["error_kind"] = to_string(m.error_kind);
    j["failure_reason"] = to_string(m.failure_reason);
    j["activation_time"] = m.activation_time;
    out << j.dump() << '\n';
  }
}

std::vector<WalkTrialMetrics> read_metrics_jsonl(std::istream& in) {
  static constexpr StabilizingErrorKind kKinds[] = {StabilizingErrorKind::None, StabilizingErrorKind::Overshoot,
                                                    StabilizingErrorKind::SwingBack};
  static constexpr FailureReason kReasons[] = {FailureReason::None, FailureReason::WrongLane,
                                               FailureReason::EndOfTrack};
  std::vector<WalkTrialMetrics> out;
  for_each_line(in, [&](const json& j) {
    WalkTrialMetrics m;
    m.success = j.at("success").get<bool>();
    if (!j.at("selected_lane").is_null()) m.selected_lane = j.at("selected_lane").get<LaneId>();
    m.tct = j.at("tct").get<double>();
    m.walked_distance = j.at("walked_distance").get<double>();
    m.longitudinal_displacement = j.at("longitudinal_displacement").get<double>();
    m.stabilizing_error = j.at("stabilizing_error").get<bool>();
    m.error_kind = parse_enum(j.at("error_kind").get<std::string>(), kKinds);
    m.failure_reason = parse_enum(j.at("failure_reason").get<std::string>(), kReasons);
    m.activation_time = j.at("activation_time").get<double>();
    out.push_back(m);
  });
  return out;
}

}  // namespace abi::walkline

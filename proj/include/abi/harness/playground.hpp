#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abi/foottap/grid.hpp"
#include "abi/proximity/layers.hpp"
#include "abi/walkline/scoring.hpp"
#include "abi/harness/records.hpp"

namespace abi::harness {

/// One client of the playground protocol. Every input line produces the
/// reply lines to send back.
///
///   client: {"type":"configure","technique":T,"params":{...}}
///           {"type":"input","t":s,"x":m,"y":m}     walkline
///           {"type":"tap","x":m,"y":m}             foottap
///           {"type":"distance","t":s,"d":m}        proximity
///   server: {"type":"configured","technique":T,"layout":{...}}
///           {"type":"state","active":A,"dwell_fraction":f,"events":[...]}
///           {"type":"selected","target":A,"metrics":{...}}
///           {"type":"error","kind":K,"message":M}
///
/// walkline params: lanes (8), selection_time (2/3), total_width (1),
///   length (20), target (optional lane id; metrics are scored against the
///   selected lane when absent).
/// foottap params: rows (3), cols (6), row_height (0.085), inner_radius (0.15).
/// proximity params: min_distance (0.125), max_distance (0.6), layers (5) or
///   guideline (false).
/// Input after a finished walkline trial is an invalid-state error until the
/// session is reconfigured.
class PlaygroundSession {
 public:
  std::vector<std::string> handle(std::string_view line);

 private:
  std::vector<std::string> configure(Technique technique, const std::string& params_json);
  std::vector<std::string> on_input(double t, double x, double y);
  std::vector<std::string> on_tap(double x, double y);
  std::vector<std::string> on_distance(double t, double d);

  std::optional<Technique> technique_;

  // walkline
  std::optional<walkline::LaneLayout> layout_;
  walkline::SelectorConfig selector_config_;
  walkline::SelectorState selector_;
  std::optional<walkline::LaneId> target_;
  std::vector<walkline::WalkSample> trace_;

  // foottap
  std::optional<foottap::FootGrid> grid_;

  // proximity
  std::optional<proximity::LayerSet> layers_;
  std::optional<std::size_t> active_layer_;
};

}  // namespace abi::harness

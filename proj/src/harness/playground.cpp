#include "abi/harness/playground.hpp"

#include <cmath>

#include <json.hpp>

#include "abi/common/error.hpp"

namespace abi::harness {

using nlohmann::json;

namespace {

std::string error_line(ErrorKind kind, const std::string& message) {
  return json{{"type", "error"}, {"kind", std::string(to_string(kind))}, {"message", message}}.dump();
}

double num(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    fail(ErrorKind::InvalidArgument, std::string("\"") + key + "\" must be a number");
  }
  const double v = j[key].get<double>();
  if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, std::string("\"") + key + "\" must be finite");
  return v;
}

double num_or(const json& j, const char* key, double fallback) { return j.contains(key) ? num(j, key) : fallback; }

void only_keys(const json& j, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) fail(ErrorKind::InvalidArgument, "unknown parameter: " + k);
  }
}

json lane_json(const std::optional<walkline::LaneId>& lane) { return lane ? json(*lane) : json(nullptr); }

json metrics_json(const walkline::WalkTrialMetrics& m) {
  return {{"success", m.success},
          {"selected_lane", lane_json(m.selected_lane)},
          {"tct", m.tct},
          {"walked_distance", m.walked_distance},
          {"longitudinal_displacement", m.longitudinal_displacement},
          {"stabilizing_error", m.stabilizing_error},
          {"error_kind", walkline::to_string(m.error_kind)},
          {"failure_reason", walkline::to_string(m.failure_reason)},
          {"activation_time", m.activation_time}};
}

}  // namespace

std::vector<std::string> PlaygroundSession::handle(std::string_view line) {
  try {
    const json msg = json::parse(line);
    if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
      fail(ErrorKind::InvalidArgument, "message needs a string \"type\"");
    }
    const std::string type = msg["type"];
    if (type == "configure") {
      if (!msg.contains("technique") || !msg["technique"].is_string()) {
        fail(ErrorKind::InvalidArgument, "configure needs a technique");
      }
      Technique t;
      try {
        t = technique_from_string(msg["technique"].get<std::string>());
      } catch (const Error& e) {
        fail(ErrorKind::InvalidArgument, e.what());
      }
      const json params = msg.contains("params") ? msg["params"] : json::object();
      if (!params.is_object()) fail(ErrorKind::InvalidArgument, "params must be an object");
      return configure(t, params.dump());
    }
    if (!technique_) fail(ErrorKind::InvalidState, "send configure first");
    if (type == "input") {
      if (*technique_ != Technique::Walkline) fail(ErrorKind::InvalidState, "input messages drive walkline only");
      return on_input(num(msg, "t"), num(msg, "x"), num(msg, "y"));
    }
    if (type == "tap") {
      if (*technique_ != Technique::Foottap) fail(ErrorKind::InvalidState, "tap messages drive foottap only");
      return on_tap(num(msg, "x"), num(msg, "y"));
    }
    if (type == "distance") {
      if (*technique_ != Technique::Proximity) fail(ErrorKind::InvalidState, "distance messages drive proximity only");
      return on_distance(num(msg, "t"), num(msg, "d"));
    }
    fail(ErrorKind::InvalidArgument, "unknown message type: " + type);
  } catch (const Error& e) {
    return {error_line(e.kind(), e.what())};
  } catch (const json::exception& e) {
    return {error_line(ErrorKind::InvalidArgument, e.what())};
  }
}

std::vector<std::string> PlaygroundSession::configure(Technique technique, const std::string& params_json) {
  const json p = json::parse(params_json);
  json layout;
  switch (technique) {
    case Technique::Walkline: {
      only_keys(p, {"lanes", "selection_time", "total_width", "length", "target"});
      const double lanes = num_or(p, "lanes", 8);
      if (lanes != std::round(lanes)) fail(ErrorKind::InvalidArgument, "lanes must be an integer");
      walkline::LaneLayout l = walkline::build_lanes(static_cast<int>(lanes), num_or(p, "total_width", 1.0),
                                                     num_or(p, "length", 20.0));
      walkline::SelectorConfig sc{num_or(p, "selection_time", 2.0 / 3.0)};
      sc.validate();
      std::optional<walkline::LaneId> target;
      if (p.contains("target") && !p["target"].is_null()) {
        if (!p["target"].is_number_integer()) fail(ErrorKind::InvalidArgument, "target must be a lane id");
        target = p["target"].get<int>();
        if (*target == 0 || !l.valid_lane(*target)) fail(ErrorKind::InvalidArgument, "target must be an option lane");
      }
      layout_ = l;
      selector_config_ = sc;
      selector_ = {};
      target_ = target;
      trace_.clear();
      layout = {{"lanes", l.n_lanes()},
                {"lane_width", l.lane_width()},
                {"total_width", l.total_width()},
                {"length", l.length()},
                {"selection_time", sc.selection_time},
                {"target", lane_json(target)}};
      break;
    }
    case Technique::Foottap: {
      only_keys(p, {"rows", "cols", "row_height", "inner_radius"});
      const double rows = num_or(p, "rows", 3), cols = num_or(p, "cols", 6);
      if (rows != std::round(rows) || cols != std::round(cols)) {
        fail(ErrorKind::InvalidArgument, "rows and cols must be integers");
      }
      grid_ = foottap::build_grid(static_cast<int>(rows), static_cast<int>(cols), num_or(p, "row_height", 0.085),
                                  num_or(p, "inner_radius", 0.15));
      json cells = json::array();
      for (const auto& c : grid_->cells()) {
        const auto b = grid_->cell_bounds(c);
        cells.push_back({{"cell", foottap::to_string(c)},
                         {"r", {b.r_lower, b.r_upper}},
                         {"theta", {b.theta_lower, b.theta_upper}}});
      }
      layout = {{"rows", grid_->rows()}, {"cols", grid_->cols()}, {"cells", std::move(cells)}};
      break;
    }
    case Technique::Proximity: {
      only_keys(p, {"min_distance", "max_distance", "layers", "guideline"});
      const proximity::InteractionBounds bounds{num_or(p, "min_distance", 0.125), num_or(p, "max_distance", 0.6)};
      bool guideline = false;
      if (p.contains("guideline")) {
        if (!p["guideline"].is_boolean()) fail(ErrorKind::InvalidArgument, "guideline must be a boolean");
        guideline = p["guideline"].get<bool>();
      }
      const double n = num_or(p, "layers", 5);
      if (n != std::round(n)) fail(ErrorKind::InvalidArgument, "layers must be an integer");
      layers_ = guideline ? proximity::partition_guideline(bounds)
                          : proximity::partition_uniform(bounds, static_cast<int>(n));
      active_layer_.reset();
      layout = {{"boundaries", layers_->boundaries()}, {"reference_point", layers_->reference_point()}};
      break;
    }
  }
  technique_ = technique;
  return {json{{"type", "configured"}, {"technique", to_string(technique)}, {"layout", std::move(layout)}}.dump()};
}

std::vector<std::string> PlaygroundSession::on_input(double t, double x, double y) {
  if (selector_.finished()) fail(ErrorKind::InvalidState, "trial finished; send configure to start another");
  if (!trace_.empty() && t < trace_.back().t) fail(ErrorKind::InvalidArgument, "input time went backwards");
  const walkline::WalkSample sample{t, x, y};
  const double prev_t = trace_.empty() ? t : trace_.back().t;
  const auto step = walkline::selector_step(selector_, selector_config_, *layout_, sample, prev_t);
  selector_ = step.state;
  trace_.push_back(sample);

  json events = json::array();
  for (const auto& e : step.events) {
    events.push_back({{"kind", walkline::to_string(e.kind)}, {"lane", e.lane}, {"t", e.t}});
  }
  std::vector<std::string> out{json{{"type", "state"},
                                    {"active", lane_json(selector_.current_lane)},
                                    {"dwell_fraction", selector_.opacity_fraction},
                                    {"events", std::move(events)}}
                                   .dump()};
  if (selector_.outcome == walkline::Outcome::Selected) {
    const walkline::LaneId target = target_.value_or(*selector_.selected_lane);
    const auto m = walkline::score_trial(trace_, target, selector_config_, *layout_, trace_.front().t);
    out.push_back(json{{"type", "selected"}, {"target", *selector_.selected_lane}, {"metrics", metrics_json(m)}}.dump());
  }
  return out;
}

std::vector<std::string> PlaygroundSession::on_tap(double x, double y) {
  const auto cell = foottap::hit_test(*grid_, {x, y});
  const json active = cell ? json(foottap::to_string(*cell)) : json(nullptr);
  std::vector<std::string> out{json{{"type", "state"},
                                    {"active", active},
                                    {"dwell_fraction", cell ? 1.0 : 0.0},
                                    {"events", json::array({json{{"kind", cell ? "hit" : "miss"}}})}}
                                   .dump()};
  if (cell) {
    const auto p = grid_->to_body({x, y});
    out.push_back(json{{"type", "selected"},
                       {"target", foottap::to_string(*cell)},
                       {"metrics", {{"x", x}, {"y", y}, {"r", std::hypot(p.x, p.y)}, {"theta", std::atan2(p.y, p.x)}}}}
                      .dump());
  }
  return out;
}

std::vector<std::string> PlaygroundSession::on_distance(double t, double d) {
  const auto layer = proximity::locate(*layers_, d);
  json events = json::array();
  if (layer != active_layer_) {
    if (active_layer_) events.push_back({{"kind", "left"}, {"layer", *active_layer_}, {"t", t}});
    if (layer) events.push_back({{"kind", "entered"}, {"layer", *layer}, {"t", t}});
    active_layer_ = layer;
  }
  return {json{{"type", "state"},
               {"active", layer ? json(*layer) : json(nullptr)},
               {"dwell_fraction", 0.0},
               {"events", std::move(events)}}
              .dump()};
}

}  // namespace abi::harness

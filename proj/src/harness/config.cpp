#include "abi/harness/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "abi/common/error.hpp"

namespace abi::harness {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::InvalidConfig, where + " must be an object");
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(ErrorKind::InvalidConfig, where + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(ErrorKind::InvalidConfig, where + " must be an integer");
  return j.get<int>();
}

// Applies `fields` to the keys of `j`; any other key is an error.
void read_fields(const json& j, const std::string& where,
                 const std::map<std::string, std::function<void(const json&)>>& fields) {
  require_object(j, where);
  for (const auto& [key, value] : j.items()) {
    const auto it = fields.find(key);
    if (it == fields.end()) fail(ErrorKind::InvalidConfig, "unknown key " + where + "." + key);
    it->second(value);
  }
}

gaitsim::TapScatterParams read_scatter(const json& j, const std::string& where, gaitsim::TapScatterParams base) {
  require_object(j, where);
  if (j.contains("preset")) {
    const auto& p = j["preset"];
    if (p == "direct") {
      base = gaitsim::TapScatterParams::direct();
    } else if (p == "indirect") {
      base = gaitsim::TapScatterParams::indirect();
    } else {
      fail(ErrorKind::InvalidConfig, where + ".preset must be \"direct\" or \"indirect\"");
    }
  }
  read_fields(j, where,
              {{"preset", [](const json&) {}},
               {"row_sd", [&](const json& v) {
                  if (!v.is_array() || v.empty()) fail(ErrorKind::InvalidConfig, where + ".row_sd must be a list");
                  base.row_sd.clear();
                  for (const auto& x : v) base.row_sd.push_back(number(x, where + ".row_sd"));
                }},
               {"radial_aspect", [&](const json& v) { base.radial_aspect = number(v, where + ".radial_aspect"); }}});
  return base;
}

gaitsim::WalkBehavior read_walk(const json& j) {
  require_object(j, "walk");
  gaitsim::WalkBehavior b;
  if (j.contains("preset")) {
    const auto& p = j["preset"];
    if (p == "noiseless") {
      b = gaitsim::WalkBehavior::noiseless();
    } else if (p != "default") {
      fail(ErrorKind::InvalidConfig, "walk.preset must be \"default\" or \"noiseless\"");
    }
  }
  auto field = [&](double& dst, const char* name) {
    return std::pair<const std::string, std::function<void(const json&)>>(
        name, [&dst, name](const json& v) { dst = number(v, std::string("walk.") + name); });
  };
  read_fields(j, "walk",
              {{"preset", [](const json&) {}},
               field(b.speed_min, "speed_min"),
               field(b.speed_max, "speed_max"),
               field(b.amp_min, "amp_min"),
               field(b.amp_max, "amp_max"),
               field(b.lateral_noise_sd, "lateral_noise_sd"),
               field(b.noise_corr_time, "noise_corr_time"),
               field(b.reaction_mean, "reaction_mean"),
               field(b.reaction_sd, "reaction_sd"),
               field(b.rate_mean, "rate_mean"),
               field(b.rate_sd, "rate_sd"),
               field(b.overshoot_mean, "overshoot_mean"),
               field(b.overshoot_sd, "overshoot_sd"),
               field(b.settle_time_constant, "settle_time_constant"),
               field(b.aim_sd, "aim_sd"),
               field(b.correction_time_constant, "correction_time_constant"),
               field(b.start_offset_mean, "start_offset_mean"),
               field(b.start_offset_spread, "start_offset_spread"),
               field(b.sample_rate, "sample_rate")});
  return b;
}

gaitsim::HandReachParams read_reach(const json& j) {
  gaitsim::HandReachParams r;
  auto zone = [&](proximity::Zone z, const char* name) {
    return std::pair<const std::string, std::function<void(const json&)>>(name, [&r, z, name](const json& v) {
      auto& zr = r.zones[static_cast<std::size_t>(z)];
      const std::string where = std::string("reach.") + name;
      read_fields(v, where,
                  {{"overshoot_mean", [&](const json& x) { zr.overshoot_mean = number(x, where); }},
                   {"overshoot_sd", [&](const json& x) { zr.overshoot_sd = number(x, where); }},
                   {"drift_sd", [&](const json& x) { zr.drift_sd = number(x, where); }}});
    });
  };
  auto field = [&](double& dst, const char* name) {
    return std::pair<const std::string, std::function<void(const json&)>>(
        name, [&dst, name](const json& v) { dst = number(v, std::string("reach.") + name); });
  };
  read_fields(j, "reach",
              {zone(proximity::Zone::Near, "near"), zone(proximity::Zone::Medium, "medium"),
               zone(proximity::Zone::Far, "far"), field(r.base_duration, "base_duration"),
               field(r.seconds_per_meter, "seconds_per_meter"), field(r.confirm_delay, "confirm_delay"),
               field(r.hold_window, "hold_window"), field(r.drift_corr_time, "drift_corr_time"),
               field(r.sample_rate, "sample_rate")});
  return r;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  require_object(doc, "config");
  if (!doc.contains("technique") || !doc["technique"].is_string()) {
    fail(ErrorKind::InvalidConfig, "config needs a \"technique\" string");
  }
  ExperimentConfig cfg;
  cfg.technique = technique_from_string(doc["technique"].get<std::string>());
  read_fields(doc, "config",
              {{"technique", [](const json&) {}},
               {"factors",
                [&](const json& v) {
                  require_object(v, "factors");
                  for (const auto& [name, levels] : v.items()) {
                    std::vector<double> vals;
                    if (levels.is_array()) {
                      for (const auto& x : levels) vals.push_back(number(x, "factors." + name));
                    } else {
                      vals.push_back(number(levels, "factors." + name));
                    }
                    cfg.factors[name] = std::move(vals);
                  }
                }},
               {"trials", [&](const json& v) { cfg.trials = integer(v, "trials"); }},
               {"participants", [&](const json& v) { cfg.participants = integer(v, "participants"); }},
               {"seed",
                [&](const json& v) {
                  if (!v.is_number_unsigned()) fail(ErrorKind::InvalidConfig, "seed must be a non-negative integer");
                  cfg.seed = v.get<std::uint64_t>();
                }},
               {"threads", [&](const json& v) { cfg.threads = integer(v, "threads"); }},
               {"out",
                [&](const json& v) {
                  if (!v.is_string()) fail(ErrorKind::InvalidConfig, "out must be a string");
                  cfg.out = v.get<std::string>();
                }},
               {"walk", [&](const json& v) { cfg.walk = read_walk(v); }},
               {"scatter", [&](const json& v) { cfg.scatter = read_scatter(v, "scatter", cfg.scatter); }},
               {"indirect_scatter",
                [&](const json& v) { cfg.indirect_scatter = read_scatter(v, "indirect_scatter", cfg.indirect_scatter); }},
               {"calibration_taps", [&](const json& v) { cfg.calibration_taps = integer(v, "calibration_taps"); }},
               {"reach", [&](const json& v) { cfg.reach = read_reach(v); }}});
  try {
    cfg.validate();
  } catch (const Error& e) {
    fail(ErrorKind::InvalidConfig, e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidConfig, "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace abi::harness

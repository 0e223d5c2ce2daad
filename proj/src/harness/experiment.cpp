#include "abi/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "abi/common/error.hpp"
#include "abi/common/random.hpp"
#include "abi/foottap/classifier.hpp"
#include "abi/harness/latin_square.hpp"
#include "abi/harness/simulate.hpp"
#include "abi/proximity/layers.hpp"

namespace abi::harness {

namespace {

int as_int(const std::map<std::string, double>& cell, const char* key) {
  const double v = cell.at(key);
  if (v != std::round(v)) fail(ErrorKind::InvalidConfig, std::string(key) + " must be an integer");
  return static_cast<int>(v);
}

std::string lane_name(walkline::LaneId lane) { return (lane > 0 ? "+" : "") + std::to_string(lane); }

struct Unit {
  std::size_t cell = 0;
  int participant = 0;
  int block = 0;
};

void run_walkline(const ExperimentConfig& cfg, const std::map<std::string, double>& cell, const Unit& u,
                  std::vector<TrialRecord>& out) {
  const auto layout = walkline::build_lanes(as_int(cell, "lanes"));
  const walkline::SelectorConfig sel{cell.at("selection_time")};
  sel.validate();
  const auto lanes = layout.option_lanes();
  for (int k = 0; k < cfg.trials; ++k) {
    const int trial = u.participant * cfg.trials + k;
    const std::uint64_t seed = trial_seed(cfg.seed, u.cell, static_cast<std::size_t>(trial));
    Rng pick(derive_seed(seed, 0));
    const auto target = lanes[std::uniform_int_distribution<std::size_t>(0, lanes.size() - 1)(pick)];
    const auto m = simulate_walk_trial(cfg.walk, layout, sel, target, seed);

    TrialRecord r{Technique::Walkline, cell, lane_name(target), m.success, m.tct, {}, seed, u.participant, trial};
    r.metrics["block"] = u.block;
    r.metrics["walked_distance"] = m.walked_distance;
    r.metrics["longitudinal_displacement"] = m.longitudinal_displacement;
    r.metrics["stabilizing_error"] = m.stabilizing_error ? 1.0 : 0.0;
    r.metrics["overshoot"] = m.error_kind == walkline::StabilizingErrorKind::Overshoot ? 1.0 : 0.0;
    r.metrics["swing_back"] = m.error_kind == walkline::StabilizingErrorKind::SwingBack ? 1.0 : 0.0;
    r.metrics["wrong_lane"] = m.failure_reason == walkline::FailureReason::WrongLane ? 1.0 : 0.0;
    r.metrics["end_of_track"] = m.failure_reason == walkline::FailureReason::EndOfTrack ? 1.0 : 0.0;
    if (m.selected_lane) r.metrics["selected_lane"] = *m.selected_lane;
    out.push_back(std::move(r));
  }
}

void run_foottap(const ExperimentConfig& cfg, const std::map<std::string, double>& cell, const Unit& u,
                 std::vector<TrialRecord>& out) {
  const auto grid = foottap::build_grid(as_int(cell, "rows"), as_int(cell, "cols"));
  const bool indirect = cell.at("indirect") != 0.0;
  const auto cells = grid.cells();
  const auto& scatter = indirect ? cfg.indirect_scatter : cfg.scatter;

  std::optional<foottap::TapClassifier> model;
  if (indirect) {
    std::vector<foottap::TapSample> calibration;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (int k = 0; k < cfg.calibration_taps; ++k) {
        const auto s = derive_seed(cfg.seed, 0xca1b, u.cell, static_cast<std::uint64_t>(u.participant), c,
                                   static_cast<std::uint64_t>(k));
        calibration.push_back(gaitsim::gen_tap(grid, cells[c], scatter, s));
      }
    }
    model = foottap::train_classifier(calibration, {}, derive_seed(cfg.seed, u.cell, u.participant));
  }

  for (int k = 0; k < cfg.trials; ++k) {
    const int trial = u.participant * cfg.trials + k;
    const std::uint64_t seed = trial_seed(cfg.seed, u.cell, static_cast<std::size_t>(trial));
    Rng pick(derive_seed(seed, 0));
    const auto target = cells[std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(pick)];
    const auto tap = gaitsim::gen_tap(grid, target, scatter, derive_seed(seed, 1));
    const std::optional<foottap::Cell> got =
        model ? std::optional<foottap::Cell>(model->predict(tap.point)) : foottap::hit_test(grid, tap.point);

    TrialRecord r{Technique::Foottap, cell, foottap::to_string(target), got == target, 0.0, {}, seed,
                  u.participant, trial};
    r.metrics["block"] = u.block;
    r.metrics["x"] = tap.point.x;
    r.metrics["y"] = tap.point.y;
    r.metrics["miss"] = got ? 0.0 : 1.0;
    if (got) {
      r.metrics["selected_row"] = got->row;
      r.metrics["selected_col"] = got->col;
    }
    out.push_back(std::move(r));
  }
}

void run_proximity(const ExperimentConfig& cfg, const std::map<std::string, double>& cell, const Unit& u,
                   std::vector<TrialRecord>& out) {
  const proximity::InteractionBounds bounds{0.125, cell.at("arm_length")};
  const auto layers = cell.at("guideline") != 0.0 ? proximity::partition_guideline(bounds)
                                                  : proximity::partition_uniform(bounds, as_int(cell, "layers"));
  const auto start_layer = proximity::locate(layers, layers.reference_point());
  std::vector<std::size_t> targets;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (!start_layer || i != *start_layer) targets.push_back(i);
  }
  if (targets.empty()) fail(ErrorKind::InvalidConfig, "proximity condition needs at least two layers");

  for (int k = 0; k < cfg.trials; ++k) {
    const int trial = u.participant * cfg.trials + k;
    const std::uint64_t seed = trial_seed(cfg.seed, u.cell, static_cast<std::size_t>(trial));
    Rng pick(derive_seed(seed, 0));
    const auto target = targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(pick)];
    const auto m = simulate_hand_trial(bounds, layers, target, cfg.reach, derive_seed(seed, 1));

    // the hand confirms at the layer center, so it stays inside while its
    // drift is under half a layer
    const bool held_inside = m.holding_error < 0.5 * layers.thickness(target);
    TrialRecord r{Technique::Proximity, cell, std::to_string(target), held_inside, m.tct, {}, seed,
                  u.participant, trial};
    r.metrics["block"] = u.block;
    r.metrics["overshoot_error"] = m.overshoot_error;
    r.metrics["holding_error"] = m.holding_error;
    r.metrics["zone"] = static_cast<double>(proximity::zone_of(bounds, layers.center(target)));
    r.metrics["thickness"] = layers.thickness(target);
    out.push_back(std::move(r));
  }
}

}  // namespace

std::map<std::string, std::vector<double>> default_factors(Technique t) {
  switch (t) {
    case Technique::Walkline: return {{"lanes", {8, 12, 16}}, {"selection_time", {1.0 / 3.0, 2.0 / 3.0, 1.0}}};
    case Technique::Foottap: return {{"rows", {1, 2, 3}}, {"cols", {2, 4, 6}}, {"indirect", {0}}};
    case Technique::Proximity:
      return {{"layers", {12, 24, 36, 48, 60, 72}}, {"arm_length", {0.59}}, {"guideline", {0}}};
  }
  return {};
}

void ExperimentConfig::validate() const {
  const auto defaults = default_factors(technique);
  for (const auto& [name, levels] : factors) {
    if (!defaults.contains(name)) {
      fail(ErrorKind::InvalidConfig, "unknown factor for " + std::string(to_string(technique)) + ": " + name);
    }
    if (levels.empty()) fail(ErrorKind::InvalidConfig, "factor " + name + " has no levels");
    for (double v : levels) {
      if (!std::isfinite(v)) fail(ErrorKind::InvalidConfig, "factor " + name + " has a non-finite level");
    }
  }
  if (trials < 1) fail(ErrorKind::InvalidConfig, "trials must be >= 1");
  if (participants < 1) fail(ErrorKind::InvalidConfig, "participants must be >= 1");
  if (threads < 1) fail(ErrorKind::InvalidConfig, "threads must be >= 1");
  if (calibration_taps < 2) fail(ErrorKind::InvalidConfig, "calibration_taps must be >= 2");
  walk.validate();
  scatter.validate();
  indirect_scatter.validate();
  reach.validate();
}

std::vector<std::map<std::string, double>> condition_cells(const ExperimentConfig& config) {
  auto factors = default_factors(config.technique);
  for (const auto& [name, levels] : config.factors) factors[name] = levels;
  std::vector<std::map<std::string, double>> cells{{}};
  for (const auto& [name, levels] : factors) {
    std::vector<std::map<std::string, double>> next;
    for (const auto& c : cells) {
      for (double v : levels) {
        auto e = c;
        e[name] = v;
        next.push_back(std::move(e));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t condition_index, std::size_t trial_index) {
  return derive_seed(master, condition_index, trial_index);
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto cells = condition_cells(config);

  std::vector<Unit> units;
  const auto square = cells.size() >= 2 ? balanced_latin_square(static_cast<int>(cells.size()))
                                        : std::vector<std::vector<int>>{{0}};
  for (int p = 0; p < config.participants; ++p) {
    const auto& order = square[static_cast<std::size_t>(p) % square.size()];
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      units.push_back({static_cast<std::size_t>(order[pos]), p, static_cast<int>(pos)});
    }
  }

  std::vector<std::vector<TrialRecord>> results(units.size());
  auto run_unit = [&](std::size_t i) {
    const Unit& u = units[i];
    switch (config.technique) {
      case Technique::Walkline: run_walkline(config, cells[u.cell], u, results[i]); break;
      case Technique::Foottap: run_foottap(config, cells[u.cell], u, results[i]); break;
      case Technique::Proximity: run_proximity(config, cells[u.cell], u, results[i]); break;
    }
  };

  if (config.threads == 1) {
    for (std::size_t i = 0; i < units.size(); ++i) run_unit(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(config.threads));
    std::vector<std::thread> pool;
    for (int w = 0; w < config.threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i; (i = next++) < units.size();) run_unit(i);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
          next = units.size();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<TrialRecord> records;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(records));
  std::sort(records.begin(), records.end(), canonical_less);
  return records;
}

}  // namespace abi::harness

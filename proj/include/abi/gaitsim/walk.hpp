#pragma once

#include <cstdint>
#include <vector>

#include "abi/common/random.hpp"
#include "abi/walkline/selector.hpp"

namespace abi::gaitsim {

using walkline::WalkSample;

/// Steady walking. The head sways sideways at the stride frequency; on top
/// of that sits a correlated tracking/posture noise.
struct GaitParams {
  double speed = 1.2;               // m/s
  double stride_freq = 1.0;         // Hz
  double oscillation_amp = 0.0125;  // m, per direction
  double phase = 0.0;               // rad
  double lateral_noise_sd = 0.005;  // m, stationary sd of the lateral noise
  double noise_corr_time = 0.25;    // s, 0 gives white noise
  double sample_rate = 60.0;        // Hz
  double start_y = 0.0;             // m along the track at t = 0

  void validate() const;
};

/// Open-loop lateral shift: wait, move sideways at a constant rate past the
/// aim point by an overshoot, then settle back exponentially. Any initial
/// aiming error decays with the (slower) correction time constant.
struct ShiftPlan {
  double reaction_time = 0.5;          // s
  double lateral_rate = 0.5;           // m/s
  double overshoot_fraction = 0.15;    // of |target_x|
  double settle_time_constant = 0.4;   // s
  double target_x = 0.0;               // m
  double aim_offset = 0.0;             // m, initial settle error
  double correction_time_constant = 1.0;  // s

  void validate() const;
};

/// Planned lateral position at time t.
double plan_position(const ShiftPlan& plan, double t);

/// Samples at sample_rate over [0, duration]:
///   x(t) = plan(t) + amp sin(2 pi f t + phase) + noise(t),  y(t) = start_y + speed t.
std::vector<WalkSample> gen_walk_trace(const GaitParams& gait, const ShiftPlan& plan, double duration,
                                       std::uint64_t seed);

/// Between-trial variability of walkers, from which one trial's gait and
/// shift plan are drawn. The defaults are fitted so that simulated accuracy
/// and stabilizing-error rates follow the measured trends across lane
/// counts and selection times; they are behavioural fit values, not
/// measurements.
struct WalkBehavior {
  double speed_min = 1.0;
  double speed_max = 1.5;
  double amp_min = 0.010;
  double amp_max = 0.015;
  double lateral_noise_sd = 0.0235;
  double noise_corr_time = 0.29;
  double reaction_mean = 0.5;
  double reaction_sd = 0.1;
  double rate_mean = 1.0;
  double rate_sd = 0.15;
  double overshoot_mean = 0.06;
  double overshoot_sd = 0.027;
  double settle_time_constant = 0.4;
  double aim_sd = 0.03;
  double correction_time_constant = 7.0;
  double start_offset_mean = 2.0;  // m, where the task appears
  double start_offset_spread = 0.5;
  double sample_rate = 60.0;

  /// No sway, no noise, no overshoot, no aiming error, fixed timing.
  static WalkBehavior noiseless();
  void validate() const;
};

struct WalkTrialDraw {
  GaitParams gait;
  ShiftPlan plan;
};

WalkTrialDraw sample_walk_trial(const WalkBehavior& behavior, double target_x, Rng& rng);

}  // namespace abi::gaitsim

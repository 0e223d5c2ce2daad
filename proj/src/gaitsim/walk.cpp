#include "abi/gaitsim/walk.hpp"

#include <cmath>
#include <numbers>

#include "abi/common/error.hpp"

namespace abi::gaitsim {

void GaitParams::validate() const {
  if (!(speed > 0.0 && stride_freq > 0.0 && sample_rate > 0.0)) {
    fail(ErrorKind::InvalidArgument, "gait speed, stride frequency and sample rate must be positive");
  }
  if (!(oscillation_amp >= 0.0 && oscillation_amp <= 0.02)) {
    fail(ErrorKind::InvalidArgument, "oscillation amplitude must be within [0, 0.02] m");
  }
  if (!(lateral_noise_sd >= 0.0 && noise_corr_time >= 0.0)) {
    fail(ErrorKind::InvalidArgument, "noise parameters must be non-negative");
  }
}

void ShiftPlan::validate() const {
  if (!(reaction_time >= 0.0 && lateral_rate > 0.0 && overshoot_fraction >= 0.0 &&
        settle_time_constant > 0.0 && correction_time_constant > 0.0)) {
    fail(ErrorKind::InvalidArgument, "shift plan rates and time constants must be positive");
  }
}

double plan_position(const ShiftPlan& plan, double t) {
  if (t < plan.reaction_time || (plan.target_x == 0.0 && plan.aim_offset == 0.0)) return 0.0;
  const double aim = plan.target_x + plan.aim_offset;
  const double dir = aim >= 0.0 ? 1.0 : -1.0;
  const double peak = aim + dir * plan.overshoot_fraction * std::abs(plan.target_x);
  const double t_peak = plan.reaction_time + std::abs(peak) / plan.lateral_rate;
  if (t < t_peak) return dir * plan.lateral_rate * (t - plan.reaction_time);
  const double since = t - t_peak;
  return plan.target_x + plan.aim_offset * std::exp(-since / plan.correction_time_constant) +
         (peak - aim) * std::exp(-since / plan.settle_time_constant);
}

std::vector<WalkSample> gen_walk_trace(const GaitParams& gait, const ShiftPlan& plan, double duration,
                                       std::uint64_t seed) {
  gait.validate();
  plan.validate();
  if (!(duration > 0.0)) fail(ErrorKind::InvalidArgument, "duration must be positive");

  Rng rng(derive_seed(seed));
  const double dt = 1.0 / gait.sample_rate;
  const auto n = static_cast<std::size_t>(std::floor(duration * gait.sample_rate + 1e-9)) + 1;
  const double keep = gait.noise_corr_time > 0.0 ? std::exp(-dt / gait.noise_corr_time) : 0.0;
  const double innovation = gait.lateral_noise_sd * std::sqrt(1.0 - keep * keep);

  std::vector<WalkSample> trace;
  trace.reserve(n);
  double noise = gaussian(rng, 0.0, gait.lateral_noise_sd);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (k > 0) noise = keep * noise + gaussian(rng, 0.0, innovation);
    const double sway =
        gait.oscillation_amp * std::sin(2.0 * std::numbers::pi * gait.stride_freq * t + gait.phase);
    trace.push_back({t, plan_position(plan, t) + sway + noise, gait.start_y + gait.speed * t});
  }
  return trace;
}

WalkBehavior WalkBehavior::noiseless() {
  WalkBehavior b;
  b.speed_min = b.speed_max = 1.2;
  b.amp_min = b.amp_max = 0.0;
  b.lateral_noise_sd = 0.0;
  b.reaction_sd = 0.0;
  b.rate_sd = 0.0;
  b.overshoot_mean = 0.0;
  b.overshoot_sd = 0.0;
  b.aim_sd = 0.0;
  b.start_offset_spread = 0.0;
  return b;
}

void WalkBehavior::validate() const {
  if (!(speed_min > 0.0 && speed_max >= speed_min && amp_min >= 0.0 && amp_max >= amp_min &&
        amp_max <= 0.02 && rate_mean > 0.0 && sample_rate > 0.0 && settle_time_constant > 0.0 &&
        correction_time_constant > 0.0)) {
    fail(ErrorKind::InvalidConfig, "inconsistent walk behaviour parameters");
  }
  if (!(lateral_noise_sd >= 0.0 && reaction_mean >= 0.0 && reaction_sd >= 0.0 && rate_sd >= 0.0 &&
        overshoot_mean >= 0.0 && overshoot_sd >= 0.0 && aim_sd >= 0.0 && start_offset_spread >= 0.0)) {
    fail(ErrorKind::InvalidConfig, "walk behaviour spreads must be non-negative");
  }
}

WalkTrialDraw sample_walk_trial(const WalkBehavior& b, double target_x, Rng& rng) {
  b.validate();
  WalkTrialDraw draw;
  GaitParams& g = draw.gait;
  g.speed = b.speed_min == b.speed_max ? b.speed_min : uniform(rng, b.speed_min, b.speed_max);
  g.oscillation_amp = b.amp_min == b.amp_max ? b.amp_min : uniform(rng, b.amp_min, b.amp_max);
  g.phase = g.oscillation_amp > 0.0 ? uniform(rng, 0.0, 2.0 * std::numbers::pi) : 0.0;
  g.lateral_noise_sd = b.lateral_noise_sd;
  g.noise_corr_time = b.noise_corr_time;
  g.sample_rate = b.sample_rate;
  g.start_y = b.start_offset_mean +
              (b.start_offset_spread > 0.0 ? uniform(rng, -b.start_offset_spread, b.start_offset_spread) : 0.0);

  ShiftPlan& p = draw.plan;
  p.target_x = target_x;
  p.reaction_time = std::max(0.2, gaussian(rng, b.reaction_mean, b.reaction_sd));
  p.lateral_rate = std::max(0.5 * b.rate_mean, gaussian(rng, b.rate_mean, b.rate_sd));
  p.overshoot_fraction = std::max(0.0, gaussian(rng, b.overshoot_mean, b.overshoot_sd));
  p.settle_time_constant = b.settle_time_constant;
  p.aim_offset = gaussian(rng, 0.0, b.aim_sd);
  p.correction_time_constant = b.correction_time_constant;
  return draw;
}

}  // namespace abi::gaitsim

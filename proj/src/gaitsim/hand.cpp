#include "abi/gaitsim/hand.hpp"

#include <algorithm>
#include <cmath>

#include "abi/common/error.hpp"
#include "abi/common/random.hpp"

namespace abi::gaitsim {

double minimum_jerk(double s) {
  s = std::clamp(s, 0.0, 1.0);
  return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

void HandReachParams::validate() const {
  for (const auto& z : zones) {
    if (!(z.overshoot_mean >= 0.0 && z.overshoot_sd >= 0.0 && z.drift_sd >= 0.0)) {
      fail(ErrorKind::InvalidConfig, "hand reach parameters must be non-negative");
    }
  }
  if (!(base_duration > 0.0 && seconds_per_meter >= 0.0 && confirm_delay >= 0.0 && hold_window >= 0.0 &&
        drift_corr_time > 0.0 && sample_rate > 0.0)) {
    fail(ErrorKind::InvalidConfig, "hand reach timing must be positive");
  }
}

HandTrace gen_hand_trace(const proximity::InteractionBounds& bounds, double start, double target,
                         const HandReachParams& reach, std::uint64_t seed) {
  bounds.validate();
  reach.validate();
  if (!std::isfinite(start) || !std::isfinite(target)) fail(ErrorKind::InvalidArgument, "non-finite reach");

  Rng rng(derive_seed(seed));
  HandTrace out;
  out.zone = proximity::zone_of(bounds, target);
  const ZoneReach& z = reach.zone(out.zone);
  out.overshoot = std::max(0.0, gaussian(rng, z.overshoot_mean, z.overshoot_sd));

  const double dir = target >= start ? 1.0 : -1.0;
  const double peak = target + dir * out.overshoot;
  const double t1 = reach.base_duration + reach.seconds_per_meter * std::abs(peak - start);
  const double t2 = t1 + 0.75 * reach.base_duration + reach.seconds_per_meter * out.overshoot;
  out.confirm_time = t2 + reach.confirm_delay;
  const double end = out.confirm_time + reach.hold_window;

  const double dt = 1.0 / reach.sample_rate;
  const auto n = static_cast<std::size_t>(std::ceil(end * reach.sample_rate - 1e-9)) + 1;
  const double keep = std::exp(-dt / reach.drift_corr_time);
  const double innovation = z.drift_sd * std::sqrt(1.0 - keep * keep);

  out.samples.reserve(n);
  double drift = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    double d;
    if (t < t1) {
      d = start + (peak - start) * minimum_jerk(t / t1);
    } else if (t < t2) {
      d = peak + (target - peak) * minimum_jerk((t - t1) / (t2 - t1));
    } else {
      d = target;
    }
    if (t > out.confirm_time) {
      drift = keep * drift + gaussian(rng, 0.0, innovation);
      d += drift;
    }
    out.samples.push_back({t, d});
  }
  return out;
}

}  // namespace abi::gaitsim

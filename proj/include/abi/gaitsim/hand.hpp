#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "abi/proximity/hand_metrics.hpp"
#include "abi/proximity/layers.hpp"

namespace abi::gaitsim {

struct ZoneReach {
  double overshoot_mean = 0.0;  // m
  double overshoot_sd = 0.0;    // m
  double drift_sd = 0.0;        // m, stationary sd of the drift while holding
};

/// Hand behaviour for search-and-hold reaches, indexed by Zone. Overshoot
/// shrinks as the hand approaches the limits of reach.
struct HandReachParams {
  std::array<ZoneReach, 3> zones{{
      {0.044, 0.017, 0.0050},  // near
      {0.021, 0.010, 0.0045},  // medium
      {0.016, 0.007, 0.0075},  // far
  }};
  double base_duration = 0.4;      // s, minimum-jerk segment floor
  double seconds_per_meter = 2.5;  // s/m added per meter travelled
  double confirm_delay = 0.25;     // s still at the target before confirming
  double hold_window = 3.0;        // s
  double drift_corr_time = 1.0;    // s
  double sample_rate = 120.0;      // Hz

  const ZoneReach& zone(proximity::Zone z) const { return zones[static_cast<std::size_t>(z)]; }
  void validate() const;
};

struct HandTrace {
  std::vector<proximity::DistanceSample> samples;
  double confirm_time = 0.0;
  proximity::Zone zone = proximity::Zone::Near;
  double overshoot = 0.0;  // drawn excursion past the target
};

/// Minimum-jerk reach from `start` to `target` + overshoot, minimum-jerk
/// return to the target, a short still phase, confirmation, then a hold
/// with slow drift. The overshoot is drawn for the zone of the travel
/// distance and points away from the start.
HandTrace gen_hand_trace(const proximity::InteractionBounds& bounds, double start, double target,
                         const HandReachParams& reach, std::uint64_t seed);

/// Normalized minimum-jerk position profile, s in [0, 1].
double minimum_jerk(double s);

}  // namespace abi::gaitsim

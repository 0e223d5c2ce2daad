#pragma once

#include <span>

namespace abi::proximity {

/// One tracked hand-to-eye distance.
struct DistanceSample {
  double t = 0.0;  // s
  double d = 0.0;  // m
};

struct TargetInterval {
  double lower = 0.0;
  double upper = 0.0;

  double center() const { return 0.5 * (lower + upper); }
  bool contains(double d) const { return d >= lower && d < upper; }
};

struct HandTrialMetrics {
  double tct = 0.0;              // s
  double overshoot_error = 0.0;  // m
  double holding_error = 0.0;    // m
};

inline constexpr double kDefaultHoldWindow = 3.0;

/// Scores one search-and-hold trial.
///
/// overshoot: max |d - target center| between first entering the target and
/// the confirmation. holding: max |d - d(confirm)| during the hold window.
/// Values at the window edges are linearly interpolated from the trace.
/// Throws target-not-reached if the hand never entered the target before
/// confirming, invalid-data if the trace is malformed or too short.
HandTrialMetrics hand_trial_metrics(std::span<const DistanceSample> trace, TargetInterval target,
                                    double confirm_time, double hold_window = kDefaultHoldWindow);

/// Linear interpolation of a time-ordered trace, clamped at the ends.
double interpolate(std::span<const DistanceSample> trace, double t);

}  // namespace abi::proximity

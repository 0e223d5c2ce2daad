#pragma once

#include <optional>
#include <span>
#include <vector>

#include "abi/walkline/selector.hpp"

namespace abi::walkline {

enum class StabilizingErrorKind { None, Overshoot, SwingBack };
enum class FailureReason { None, WrongLane, EndOfTrack };

const char* to_string(StabilizingErrorKind kind);
const char* to_string(FailureReason reason);

struct WalkTrialMetrics {
  bool success = false;
  std::optional<LaneId> selected_lane;
  double tct = 0.0;              // s, activation minus selection time, from task display
  double walked_distance = 0.0;  // m, path length during the tct window
  double longitudinal_displacement = 0.0;  // m, along the track during the same window
  bool stabilizing_error = false;
  StabilizingErrorKind error_kind = StabilizingErrorKind::None;
  FailureReason failure_reason = FailureReason::None;
  double activation_time = 0.0;  // s, absolute; end of trial for failures

  friend bool operator==(const WalkTrialMetrics&, const WalkTrialMetrics&) = default;
};

/// Replays a trace through the selector from `task_shown_at` on and scores
/// it against the target lane. The trial ends at the first selection; a
/// wrong lane is a failure. A trace that ends without a selection counts as
/// running out of track.
WalkTrialMetrics score_trial(std::span<const WalkSample> trace, LaneId target, const SelectorConfig& config,
                             const LaneLayout& layout, double task_shown_at);

/// Polyline length of the trace between two times (interpolated at the ends).
double arc_length(std::span<const WalkSample> trace, double t0, double t1);

/// Linear interpolation of a trace at time t, clamped at the ends.
WalkSample sample_at(std::span<const WalkSample> trace, double t);

}  // namespace abi::walkline

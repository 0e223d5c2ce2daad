#include "abi/walkline/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "abi/common/error.hpp"

namespace abi::walkline {

const char* to_string(StabilizingErrorKind kind) {
  switch (kind) {
    case StabilizingErrorKind::None: return "none";
    case StabilizingErrorKind::Overshoot: return "overshoot";
    case StabilizingErrorKind::SwingBack: return "swing_back";
  }
  return "?";
}

const char* to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::None: return "none";
    case FailureReason::WrongLane: return "wrong_lane";
    case FailureReason::EndOfTrack: return "end_of_track";
  }
  return "?";
}

WalkSample sample_at(std::span<const WalkSample> trace, double t) {
  if (trace.empty()) fail(ErrorKind::InvalidData, "empty trace");
  if (t <= trace.front().t) return trace.front();
  if (t >= trace.back().t) return trace.back();
  const auto it = std::upper_bound(trace.begin(), trace.end(), t,
                                   [](double v, const WalkSample& s) { return v < s.t; });
  const WalkSample& b = *it;
  const WalkSample& a = *(it - 1);
  if (b.t == a.t) return b;
  const double w = (t - a.t) / (b.t - a.t);
  return {t, a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)};
}

double arc_length(std::span<const WalkSample> trace, double t0, double t1) {
  if (trace.empty() || !(t1 > t0)) return 0.0;
  double length = 0.0;
  WalkSample prev = sample_at(trace, t0);
  for (const auto& s : trace) {
    if (s.t <= t0) continue;
    if (s.t >= t1) break;
    length += std::hypot(s.x - prev.x, s.y - prev.y);
    prev = s;
  }
  const WalkSample end = sample_at(trace, t1);
  return length + std::hypot(end.x - prev.x, end.y - prev.y);
}

WalkTrialMetrics score_trial(std::span<const WalkSample> trace, LaneId target, const SelectorConfig& config,
                             const LaneLayout& layout, double task_shown_at) {
  using K = SelectorEvent::Kind;
  if (trace.empty()) fail(ErrorKind::InvalidData, "empty trace");
  if (target == 0 || !layout.valid_lane(target)) {
    fail(ErrorKind::InvalidArgument, "target must be an option lane");
  }
  config.validate();
  if (trace.front().t > task_shown_at) fail(ErrorKind::InvalidData, "trace starts after the task was shown");

  const LaneInterval target_box = layout.interval(target);
  const int shift_dir = target > 0 ? 1 : -1;

  WalkTrialMetrics m;
  SelectorState state;
  bool entered_target = false;
  bool have_prev = false;
  double prev_t = task_shown_at;
  double end_t = trace.back().t;

  for (const auto& sample : trace) {
    if (sample.t < task_shown_at) continue;
    const auto step = selector_step(state, config, layout, sample, have_prev ? prev_t : sample.t);
    have_prev = true;
    prev_t = sample.t;
    state = step.state;
    for (const auto& ev : step.events) {
      if (ev.kind == K::Entered && ev.lane == target) entered_target = true;
      if (ev.kind == K::Left && ev.lane == target && entered_target && !m.stabilizing_error) {
        m.stabilizing_error = true;
        const int exit_dir = sample.x >= target_box.upper ? 1 : -1;
        m.error_kind = exit_dir == shift_dir ? StabilizingErrorKind::Overshoot : StabilizingErrorKind::SwingBack;
      }
    }
    if (state.finished()) {
      end_t = sample.t;
      break;
    }
  }

  if (state.outcome == Outcome::Selected) {
    m.selected_lane = state.selected_lane;
    m.success = *state.selected_lane == target;
    m.failure_reason = m.success ? FailureReason::None : FailureReason::WrongLane;
    m.tct = std::max(0.0, end_t - task_shown_at - config.selection_time);
  } else {
    m.failure_reason = FailureReason::EndOfTrack;
    m.tct = std::max(0.0, end_t - task_shown_at);
  }
  m.activation_time = end_t;
  const double window_end = task_shown_at + m.tct;
  m.walked_distance = arc_length(trace, task_shown_at, window_end);
  m.longitudinal_displacement = sample_at(trace, window_end).y - sample_at(trace, task_shown_at).y;
  return m;
}

}  // namespace abi::walkline

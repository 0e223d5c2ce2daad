#include "abi/proximity/hand_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "abi/common/error.hpp"

namespace abi::proximity {

double interpolate(std::span<const DistanceSample> trace, double t) {
  if (trace.empty()) fail(ErrorKind::InvalidData, "empty trace");
  if (t <= trace.front().t) return trace.front().d;
  if (t >= trace.back().t) return trace.back().d;
  const auto it = std::upper_bound(trace.begin(), trace.end(), t,
                                   [](double v, const DistanceSample& s) { return v < s.t; });
  const auto& b = *it;
  const auto& a = *(it - 1);
  if (b.t == a.t) return b.d;
  const double w = (t - a.t) / (b.t - a.t);
  return a.d + w * (b.d - a.d);
}

HandTrialMetrics hand_trial_metrics(std::span<const DistanceSample> trace, TargetInterval target,
                                    double confirm_time, double hold_window) {
  if (trace.empty()) fail(ErrorKind::InvalidData, "empty trace");
  if (!(target.upper > target.lower)) fail(ErrorKind::InvalidArgument, "empty target interval");
  if (!(hold_window >= 0.0)) fail(ErrorKind::InvalidArgument, "negative hold window");
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!std::isfinite(trace[i].t) || !std::isfinite(trace[i].d)) {
      fail(ErrorKind::InvalidData, "non-finite trace sample");
    }
    if (i > 0 && trace[i].t < trace[i - 1].t) fail(ErrorKind::InvalidData, "trace time goes backwards");
  }
  const double hold_end = confirm_time + hold_window;
  if (confirm_time < trace.front().t || trace.back().t < hold_end) {
    fail(ErrorKind::InvalidData, "trace does not cover confirmation and hold window");
  }

  std::optional<double> first_reach;
  for (const auto& s : trace) {
    if (s.t > confirm_time) break;
    if (target.contains(s.d)) {
      first_reach = s.t;
      break;
    }
  }
  if (!first_reach) fail(ErrorKind::TargetNotReached, "hand never entered the target layer");

  const double center = target.center();
  const double d_confirm = interpolate(trace, confirm_time);

  HandTrialMetrics m;
  m.tct = confirm_time - trace.front().t;
  m.overshoot_error = std::abs(d_confirm - center);
  m.holding_error = std::abs(interpolate(trace, hold_end) - d_confirm);
  for (const auto& s : trace) {
    if (s.t >= *first_reach && s.t <= confirm_time) {
      m.overshoot_error = std::max(m.overshoot_error, std::abs(s.d - center));
    }
    if (s.t >= confirm_time && s.t <= hold_end) {
      m.holding_error = std::max(m.holding_error, std::abs(s.d - d_confirm));
    }
  }
  return m;
}

}  // namespace abi::proximity

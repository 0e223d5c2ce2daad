#include "abi/walkline/selector.hpp"

#include <algorithm>
#include <cmath>

#include "abi/common/error.hpp"

namespace abi::walkline {

void SelectorConfig::validate() const {
  if (!(selection_time > 0.0) || !std::isfinite(selection_time)) {
    fail(ErrorKind::InvalidArgument, "selection time must be positive");
  }
}

const char* to_string(SelectorEvent::Kind kind) {
  using K = SelectorEvent::Kind;
  switch (kind) {
    case K::Entered: return "entered";
    case K::Left: return "left";
    case K::OffTrack: return "off_track";
    case K::BackOnTrack: return "back_on_track";
    case K::Selected: return "selected";
    case K::EndOfTrack: return "end_of_track";
  }
  return "?";
}

SelectorStep selector_step(const SelectorState& state, const SelectorConfig& config,
                           const LaneLayout& layout, const WalkSample& sample, double prev_t) {
  using K = SelectorEvent::Kind;
  if (state.finished()) fail(ErrorKind::InvalidState, "selector already has a result");
  config.validate();
  if (!std::isfinite(sample.t) || !std::isfinite(sample.x) || !std::isfinite(sample.y)) {
    fail(ErrorKind::InvalidArgument, "non-finite walk sample");
  }
  if (sample.t < prev_t) fail(ErrorKind::InvalidArgument, "walk samples must be time-ordered");

  SelectorStep step{state, {}};
  SelectorState& next = step.state;
  auto emit = [&](K kind, LaneId lane) { step.events.push_back({kind, lane, sample.t}); };

  const std::optional<LaneId> lane = lane_at(layout, sample.x);
  if (lane != state.current_lane) {
    if (state.current_lane) {
      if (*state.current_lane != 0) emit(K::Left, *state.current_lane);
    } else {
      emit(K::BackOnTrack, lane.value_or(0));
    }
    if (!lane) {
      emit(K::OffTrack, state.current_lane.value_or(0));
    } else {
      if (*lane != 0) emit(K::Entered, *lane);
      const bool resumes = !state.current_lane && *lane == state.dwell_lane;
      if (!resumes) {
        next.dwell_lane = *lane;
        next.dwell_elapsed = 0.0;
      }
    }
    next.current_lane = lane;
  } else if (lane && *lane != 0) {
    next.dwell_elapsed += sample.t - prev_t;
  }
  next.opacity_fraction = std::min(1.0, next.dwell_elapsed / config.selection_time);

  if (next.current_lane && *next.current_lane != 0 && next.dwell_elapsed >= config.selection_time) {
    next.outcome = Outcome::Selected;
    next.selected_lane = *next.current_lane;
    emit(K::Selected, *next.current_lane);
  } else if (sample.y >= layout.length()) {
    next.outcome = Outcome::EndOfTrack;
    emit(K::EndOfTrack, next.current_lane.value_or(0));
  }
  return step;
}

}  // namespace abi::walkline

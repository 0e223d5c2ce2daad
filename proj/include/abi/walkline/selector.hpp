#pragma once

#include <optional>
#include <vector>

#include "abi/walkline/lanes.hpp"

namespace abi::walkline {

/// Tracked head position: t in seconds, x lateral, y along the path.
struct WalkSample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const WalkSample&, const WalkSample&) = default;
};

struct SelectorConfig {
  double selection_time = 2.0 / 3.0;  // s

  void validate() const;
};

enum class Outcome { Pending, Selected, EndOfTrack };

/// Dwell-timer selection automaton.
///
/// Walking on an option lane accumulates dwell; changing lane resets it.
/// Leaving the strip pauses the timer, and it resumes if the walker comes
/// back onto the same lane. The null lane never accumulates dwell.
struct SelectorState {
  std::optional<LaneId> current_lane = 0;  // nullopt while off the strip
  LaneId dwell_lane = 0;
  double dwell_elapsed = 0.0;
  double opacity_fraction = 0.0;  // fade of the non-active lanes
  Outcome outcome = Outcome::Pending;
  std::optional<LaneId> selected_lane;

  bool finished() const { return outcome != Outcome::Pending; }
};

struct SelectorEvent {
  enum class Kind { Entered, Left, OffTrack, BackOnTrack, Selected, EndOfTrack };
  Kind kind;
  LaneId lane = 0;
  double t = 0.0;

  friend bool operator==(const SelectorEvent&, const SelectorEvent&) = default;
};

const char* to_string(SelectorEvent::Kind kind);

struct SelectorStep {
  SelectorState state;
  std::vector<SelectorEvent> events;
};

/// Advances the automaton by one sample taken at `sample.t`, `prev_t` being
/// the time of the previous sample. A dwell of exactly selection_time
/// selects. Throws invalid-state once a result is set.
SelectorStep selector_step(const SelectorState& state, const SelectorConfig& config,
                           const LaneLayout& layout, const WalkSample& sample, double prev_t);

}  // namespace abi::walkline

#pragma once

#include <cstdint>

#include "abi/foottap/grid.hpp"
#include "abi/gaitsim/hand.hpp"
#include "abi/gaitsim/taps.hpp"
#include "abi/gaitsim/walk.hpp"
#include "abi/proximity/hand_metrics.hpp"
#include "abi/proximity/layers.hpp"
#include "abi/walkline/scoring.hpp"

namespace abi::harness {

/// One simulated walk-the-line trial: the task appears at t = 0, the walker
/// shifts towards the target lane and the trace runs to the end of the track.
walkline::WalkTrialMetrics simulate_walk_trial(const gaitsim::WalkBehavior& behavior,
                                               const walkline::LaneLayout& layout,
                                               const walkline::SelectorConfig& config, walkline::LaneId target,
                                               std::uint64_t seed);

/// One simulated reach from the rest position to the center of `layer`,
/// scored against that layer.
proximity::HandTrialMetrics simulate_hand_trial(const proximity::InteractionBounds& bounds,
                                                const proximity::LayerSet& layers, std::size_t layer,
                                                const gaitsim::HandReachParams& reach, std::uint64_t seed);

}  // namespace abi::harness

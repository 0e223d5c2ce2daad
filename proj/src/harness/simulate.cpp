#include "abi/harness/simulate.hpp"

#include "abi/common/random.hpp"

namespace abi::harness {

walkline::WalkTrialMetrics simulate_walk_trial(const gaitsim::WalkBehavior& behavior,
                                               const walkline::LaneLayout& layout,
                                               const walkline::SelectorConfig& config, walkline::LaneId target,
                                               std::uint64_t seed) {
  Rng rng(derive_seed(seed, 1));
  const auto draw = gaitsim::sample_walk_trial(behavior, layout.center(target), rng);
  const double duration = (layout.length() - draw.gait.start_y) / draw.gait.speed + 1.0 / draw.gait.sample_rate;
  const auto trace = gaitsim::gen_walk_trace(draw.gait, draw.plan, duration, derive_seed(seed, 2));
  return walkline::score_trial(trace, target, config, layout, 0.0);
}

proximity::HandTrialMetrics simulate_hand_trial(const proximity::InteractionBounds& bounds,
                                                const proximity::LayerSet& layers, std::size_t layer,
                                                const gaitsim::HandReachParams& reach, std::uint64_t seed) {
  const double target = layers.center(layer);
  const auto trace = gaitsim::gen_hand_trace(bounds, layers.reference_point(), target, reach, seed);
  return proximity::hand_trial_metrics(trace.samples, {layers.lower(layer), layers.upper(layer)},
                                       trace.confirm_time, reach.hold_window);
}

}  // namespace abi::harness

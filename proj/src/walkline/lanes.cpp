#include "abi/walkline/lanes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abi/common/error.hpp"

namespace abi::walkline {

LaneLayout::LaneLayout(int n_lanes, double total_width, double length)
    : n_lanes_(n_lanes), total_width_(total_width), length_(length) {
  if (n_lanes < 2 || n_lanes % 2 != 0) {
    fail(ErrorKind::InvalidArgument, "number of lanes must be even and >= 2");
  }
  if (!(total_width > 0.0) || !(length > 0.0)) {
    fail(ErrorKind::InvalidArgument, "lane strip needs positive width and length");
  }
  lane_width_ = total_width / (n_lanes + 1);
}

LaneInterval LaneLayout::interval(LaneId lane) const {
  if (!valid_lane(lane)) fail(ErrorKind::InvalidArgument, "lane " + std::to_string(lane) + " out of range");
  // outermost edges are pinned to the strip so the lanes tile it exactly
  return {
      lane == -max_lane() ? -0.5 * total_width_ : (lane - 0.5) * lane_width_,
      lane == max_lane() ? 0.5 * total_width_ : (lane + 0.5) * lane_width_,
  };
}

std::vector<LaneId> LaneLayout::option_lanes() const {
  std::vector<LaneId> lanes;
  for (LaneId k = -max_lane(); k <= max_lane(); ++k)
    if (k != 0) lanes.push_back(k);
  return lanes;
}

LaneLayout build_lanes(int n_lanes, double total_width, double length) {
  return LaneLayout(n_lanes, total_width, length);
}

std::optional<LaneId> lane_at(const LaneLayout& layout, double x) {
  const double half = 0.5 * layout.total_width();
  if (!(x >= -half && x < half)) return std::nullopt;
  LaneId lane = static_cast<LaneId>(std::floor(x / layout.lane_width() + 0.5));
  lane = std::clamp(lane, -layout.max_lane(), layout.max_lane());
  // settle rounding at the edges against the exact intervals
  while (lane > -layout.max_lane() && x < layout.interval(lane).lower) --lane;
  while (lane < layout.max_lane() && x >= layout.interval(lane).upper) ++lane;
  return lane;
}

}  // namespace abi::walkline

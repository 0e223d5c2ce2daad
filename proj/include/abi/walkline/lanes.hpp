#pragma once

#include <optional>
#include <vector>

namespace abi::walkline {

/// Signed lane index: 0 is the inert null lane straight ahead, negative
/// lanes are on the left, positive on the right.
using LaneId = int;

struct LaneInterval {
  double lower = 0.0;
  double upper = 0.0;  // exclusive
};

/// Option lanes parallel to the walking path, half on each side of the null
/// lane. Lane k covers [(k - 1/2) w, (k + 1/2) w) with w = W / (n + 1).
class LaneLayout {
 public:
  LaneLayout(int n_lanes, double total_width = 1.0, double length = 20.0);

  int n_lanes() const { return n_lanes_; }
  int max_lane() const { return n_lanes_ / 2; }
  double total_width() const { return total_width_; }
  double length() const { return length_; }
  double lane_width() const { return lane_width_; }

  bool valid_lane(LaneId lane) const { return lane >= -max_lane() && lane <= max_lane(); }
  LaneInterval interval(LaneId lane) const;
  double center(LaneId lane) const { return lane * lane_width_; }
  std::vector<LaneId> option_lanes() const;  // all lanes except 0, ascending

 private:
  int n_lanes_;
  double total_width_;
  double length_;
  double lane_width_;
};

LaneLayout build_lanes(int n_lanes, double total_width = 1.0, double length = 20.0);

/// Lane under a lateral position; nullopt when off the interaction strip.
std::optional<LaneId> lane_at(const LaneLayout& layout, double x);

}  // namespace abi::walkline

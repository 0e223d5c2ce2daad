#pragma once

// Brute-force reference implementations used as test oracles.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "abi/walkline/lanes.hpp"
#include "abi/walkline/selector.hpp"

namespace abi::testing {

// Lane by scanning every interval; nullopt when no interval contains x.
inline std::optional<walkline::LaneId> brute_lane(const walkline::LaneLayout& layout, double x) {
  for (int k = -layout.max_lane(); k <= layout.max_lane(); ++k) {
    const auto iv = layout.interval(k);
    if (x >= iv.lower && x < iv.upper) return k;
  }
  return std::nullopt;
}

struct ScanResult {
  walkline::Outcome outcome = walkline::Outcome::Pending;
  std::optional<walkline::LaneId> lane;
  std::size_t index = 0;  // sample at which the result was set
};

// Selection by exhaustive window search. Lane k is selected at sample j when
// some window i..j starts and ends on k, contains only k or off-strip
// samples, and the steps with both ends on k sum to at least the selection
// time. The first such j wins; end of track is checked after selection.
inline ScanResult brute_select(const std::vector<walkline::WalkSample>& trace, const walkline::LaneLayout& layout,
                               double selection_time) {
  std::vector<std::optional<walkline::LaneId>> lanes;
  for (const auto& s : trace) lanes.push_back(brute_lane(layout, s.x));
  for (std::size_t j = 0; j < trace.size(); ++j) {
    const auto k = lanes[j];
    if (k && *k != 0) {
      for (std::size_t i = j + 1; i-- > 0;) {
        if (lanes[i] && *lanes[i] != *k) break;
        if (lanes[i] != k) continue;
        double dwell = 0.0;
        for (std::size_t m = i + 1; m <= j; ++m) {
          if (lanes[m] == k && lanes[m - 1] == k) dwell += trace[m].t - trace[m - 1].t;
        }
        if (dwell >= selection_time) return {walkline::Outcome::Selected, k, j};
      }
    }
    if (trace[j].y >= layout.length()) return {walkline::Outcome::EndOfTrack, std::nullopt, j};
  }
  return {};
}

// Piecewise-constant lane visits with jittered sample times, occasionally
// leaving the strip.
inline std::vector<walkline::WalkSample> random_lane_trace(const walkline::LaneLayout& layout, std::uint64_t seed,
                                                           double max_duration = 6.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double w = layout.lane_width();
  const double rate = 30.0 + 90.0 * u(rng);
  const double speed = 20.0 / max_duration * (0.5 + u(rng));
  std::vector<walkline::WalkSample> out;
  double t = 0.0, seg_end = 0.0, x = 0.0;
  while (t <= max_duration) {
    if (t >= seg_end) {
      seg_end = t + 1.2 * u(rng);
      const double r = u(rng);
      if (r < 0.08) {
        x = (u(rng) < 0.5 ? -1 : 1) * (layout.total_width() / 2 + 0.1 * u(rng));
      } else if (r < 0.2) {
        x = 0.0;
      } else {
        const int k = static_cast<int>(std::floor(u(rng) * (2 * layout.max_lane() + 1))) - layout.max_lane();
        x = (k + (u(rng) - 0.5) * 0.98) * w;
      }
    }
    out.push_back({t, x, speed * t});
    t += (0.5 + u(rng)) / rate;
  }
  return out;
}

}  // namespace abi::testing

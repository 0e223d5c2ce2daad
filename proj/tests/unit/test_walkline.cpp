#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "abi/common/error.hpp"
#include "abi/walkline/lanes.hpp"
#include "abi/walkline/scoring.hpp"
#include "abi/walkline/selector.hpp"
#include "abi/walkline/walk_io.hpp"
#include "../support/brute.hpp"

using namespace abi;
using namespace abi::walkline;
using doctest::Approx;

namespace {

using Kind = SelectorEvent::Kind;

struct Run {
  SelectorState state;
  std::vector<SelectorEvent> events;
  std::vector<SelectorState> history;
};

Run run_selector(const std::vector<WalkSample>& trace, const LaneLayout& layout, double sel) {
  Run r;
  const SelectorConfig cfg{sel};
  for (std::size_t i = 0; i < trace.size() && !r.state.finished(); ++i) {
    auto step = selector_step(r.state, cfg, layout, trace[i], i ? trace[i - 1].t : trace[i].t);
    r.state = step.state;
    r.events.insert(r.events.end(), step.events.begin(), step.events.end());
    r.history.push_back(r.state);
  }
  return r;
}

std::vector<WalkSample> sampled(double t0, double t1, double rate, auto x_of_t, double speed = 1.2) {
  std::vector<WalkSample> out;
  for (int k = 0;; ++k) {
    const double t = t0 + k / rate;
    if (t > t1 + 1e-12) break;
    out.push_back({t, x_of_t(t), speed * t});
  }
  return out;
}

}  // namespace

TEST_CASE("lane widths") {
  CHECK(build_lanes(8).lane_width() == Approx(1.0 / 9).epsilon(1e-12));
  CHECK(build_lanes(12).lane_width() == Approx(1.0 / 13).epsilon(1e-12));
  CHECK(build_lanes(16).lane_width() == Approx(1.0 / 17).epsilon(1e-12));
  CHECK_THROWS_AS(build_lanes(7), Error);
  CHECK_THROWS_AS(build_lanes(0), Error);
  CHECK(build_lanes(8).option_lanes() == std::vector<LaneId>{-4, -3, -2, -1, 1, 2, 3, 4});
}

TEST_CASE("lane lookup") {
  const auto l = build_lanes(8);
  CHECK(lane_at(l, 0.0) == std::optional<LaneId>(0));
  CHECK(lane_at(l, 0.30) == std::optional<LaneId>(3));
  CHECK(l.interval(3).lower == Approx(2.5 / 9));
  CHECK(l.interval(3).upper == Approx(3.5 / 9));
  CHECK_FALSE(lane_at(l, 0.5).has_value());
  CHECK(lane_at(l, -0.5) == std::optional<LaneId>(-4));
  CHECK_FALSE(lane_at(l, -0.51).has_value());

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int n : {8, 12, 16}) {
    const auto layout = build_lanes(n);
    for (int i = 0; i < 100000; ++i) {
      const double x = u(rng);
      REQUIRE(lane_at(layout, x) == testing::brute_lane(layout, x));
    }
  }
}

TEST_CASE("dwell selects at the threshold") {
  const auto l = build_lanes(8);
  const double x2 = l.center(2);
  const auto trace = sampled(0.0, 0.7, 100, [&](double) { return x2; });
  const auto r = run_selector(trace, l, 2.0 / 3.0);
  REQUIRE(r.state.outcome == Outcome::Selected);
  CHECK(r.state.selected_lane == std::optional<LaneId>(2));
  CHECK(r.events.back() == SelectorEvent{Kind::Selected, 2, r.events.back().t});
  // first sample with cumulative dwell >= 2/3 s: t = 0.67
  CHECK(r.events.back().t == Approx(0.67));
}

TEST_CASE("changing lane resets dwell") {
  const auto l = build_lanes(8);
  auto trace = sampled(0.0, 0.4, 100, [&](double) { return l.center(1); });
  const auto more = sampled(0.41, 0.6, 100, [&](double) { return l.center(2); });
  trace.insert(trace.end(), more.begin(), more.end());
  const auto r = run_selector(trace, l, 2.0 / 3.0);
  CHECK(r.history[40].dwell_elapsed == Approx(0.4));
  CHECK(r.history[41].current_lane == std::optional<LaneId>(2));
  CHECK(r.history[41].dwell_elapsed == 0.0);
  CHECK(r.history[41].opacity_fraction == 0.0);
  CHECK(r.state.outcome == Outcome::Pending);
}

TEST_CASE("opacity is the dwell ratio") {
  const auto l = build_lanes(8);
  const auto trace = sampled(0.0, 1.0 / 3.0, 300, [&](double) { return l.center(-1); });
  const auto r = run_selector(trace, l, 2.0 / 3.0);
  CHECK(r.state.dwell_elapsed == Approx(1.0 / 3.0));
  CHECK(r.state.opacity_fraction == Approx(0.5));
}

TEST_CASE("the null lane never selects") {
  const auto l = build_lanes(8);
  const auto trace = sampled(0.0, 30.0, 60, [](double) { return 0.0; });
  const auto r = run_selector(trace, l, 1.0 / 3.0);
  CHECK(r.state.outcome == Outcome::EndOfTrack);
  for (const auto& s : r.history) CHECK(s.dwell_elapsed == 0.0);
}

TEST_CASE("off-track pauses and resumes the dwell") {
  const auto l = build_lanes(8);
  auto trace = sampled(0.0, 0.3, 100, [&](double) { return l.center(4); });
  auto off = sampled(0.31, 0.6, 100, [](double) { return 0.55; });
  auto back = sampled(0.61, 1.2, 100, [&](double) { return l.center(4); });
  trace.insert(trace.end(), off.begin(), off.end());
  trace.insert(trace.end(), back.begin(), back.end());
  const auto r = run_selector(trace, l, 2.0 / 3.0);
  bool saw_off = false, saw_back = false;
  for (const auto& e : r.events) {
    saw_off = saw_off || e.kind == Kind::OffTrack;
    saw_back = saw_back || e.kind == Kind::BackOnTrack;
  }
  CHECK(saw_off);
  CHECK(saw_back);
  REQUIRE(r.state.outcome == Outcome::Selected);
  // 0.30 s before leaving, then 0.37 s after returning at 0.61
  CHECK(r.events.back().t == Approx(0.98));
}

TEST_CASE("stepping a finished selector is an error") {
  const auto l = build_lanes(8);
  SelectorState s;
  s.outcome = Outcome::Selected;
  CHECK_THROWS_AS(selector_step(s, {}, l, {1.0, 0.0, 0.0}, 0.9), Error);
  CHECK_THROWS_AS(selector_step({}, {0.0}, l, {1.0, 0.0, 0.0}, 0.9), Error);
}

TEST_CASE("selector matches the brute-force window scanner") {
  for (std::uint64_t seed = 0; seed < 1500; ++seed) {
    const auto layout = build_lanes(8 + 4 * static_cast<int>(seed % 3));
    const double sel = std::array{1.0 / 3.0, 2.0 / 3.0, 1.0}[(seed / 3) % 3];
    const auto trace = testing::random_lane_trace(layout, seed);
    const auto r = run_selector(trace, layout, sel);
    const auto b = testing::brute_select(trace, layout, sel);
    REQUIRE(r.state.outcome == b.outcome);
    REQUIRE(r.state.selected_lane == b.lane);
    if (b.outcome != Outcome::Pending) REQUIRE(r.history.size() == b.index + 1);
  }
}

TEST_CASE("score: straight ahead runs out of track") {
  const auto l = build_lanes(8);
  const auto trace = sampled(0.0, 20.0, 60, [](double) { return 0.0; });
  const auto m = score_trial(trace, 2, {}, l, 0.0);
  CHECK_FALSE(m.success);
  CHECK(m.failure_reason == FailureReason::EndOfTrack);
  CHECK_FALSE(m.stabilizing_error);
  CHECK_FALSE(m.selected_lane.has_value());
}

TEST_CASE("score: overshoot then re-entry") {
  const auto l = build_lanes(8);
  const LaneId target = 2;
  const double inside = l.center(2), outside = l.center(3);
  auto x = [&](double t) {
    if (t < 1.4) return 0.0;
    if (t < 1.5) return (t - 1.4) / 0.1 * l.interval(2).lower * 0.99;
    if (t < 1.9) return inside;
    if (t < 2.3) return outside;
    return inside;
  };
  const auto trace = sampled(0.0, 4.0, 100, x);
  const auto m = score_trial(trace, target, {2.0 / 3.0}, l, 0.0);
  CHECK(m.success);
  CHECK(m.selected_lane == std::optional<LaneId>(2));
  CHECK(m.stabilizing_error);
  CHECK(m.error_kind == StabilizingErrorKind::Overshoot);
  // activation at the first sample with 2/3 s of dwell after re-entry at 2.3 s
  CHECK(m.activation_time == Approx(2.97));
  CHECK(m.tct == Approx(2.97 - 2.0 / 3.0));
  CHECK(std::abs(m.tct - 2.3) <= 0.01);
}

TEST_CASE("score: swing back") {
  const auto l = build_lanes(8);
  auto x = [&](double t) {
    if (t < 1.0) return l.center(1) * 0.2;
    if (t < 1.3) return l.center(3);
    if (t < 1.6) return l.center(2);
    return l.center(3);
  };
  const auto m = score_trial(sampled(0.0, 4.0, 100, x), 3, {2.0 / 3.0}, l, 0.0);
  CHECK(m.success);
  CHECK(m.error_kind == StabilizingErrorKind::SwingBack);
}

TEST_CASE("score: wrong lane fails") {
  const auto l = build_lanes(8);
  const auto m = score_trial(sampled(0.0, 3.0, 100, [&](double) { return l.center(-1); }), 1, {}, l, 0.0);
  CHECK_FALSE(m.success);
  CHECK(m.failure_reason == FailureReason::WrongLane);
  CHECK(m.selected_lane == std::optional<LaneId>(-1));
}

TEST_CASE("score: walked distance is the arc length of the tct window") {
  const auto l = build_lanes(8);
  const double speed = 1.2, amp = 0.005;
  const double x_end = l.center(2);
  auto x = [&](double t) {
    double base = 0.0;
    if (t >= 1.2) base = std::min(1.0, (t - 1.2) / 0.4) * x_end;
    return base + amp * std::sin(2 * M_PI * t);
  };
  const auto m = score_trial(sampled(0.0, 5.0, 100, x, speed), 2, {2.0 / 3.0}, l, 0.0);
  REQUIRE(m.success);
  CHECK(std::abs(m.tct - 1.5) <= 0.011);
  // oracle: fine polyline of the analytic curve over [0, tct]
  double arc = 0.0;
  const int steps = 200000;
  for (int i = 1; i <= steps; ++i) {
    const double t0 = m.tct * (i - 1) / steps, t1 = m.tct * i / steps;
    arc += std::hypot(x(t1) - x(t0), speed * (t1 - t0));
  }
  CHECK(m.walked_distance == Approx(arc).epsilon(2e-3));
  CHECK(m.longitudinal_displacement == Approx(speed * m.tct).epsilon(1e-9));
  CHECK(m.walked_distance > speed * 1.5 - 0.02);
}

TEST_CASE("score: time shift moves activation but not tct") {
  const auto l = build_lanes(12);
  auto x = [&](double t) { return std::min(1.0, t / 1.0) * l.center(-3); };
  auto trace = sampled(0.0, 5.0, 60, x);
  const auto a = score_trial(trace, -3, {1.0}, l, 0.0);
  for (auto& s : trace) s.t += 7.25;
  const auto b = score_trial(trace, -3, {1.0}, l, 7.25);
  CHECK(b.activation_time == Approx(a.activation_time + 7.25));
  CHECK(b.tct == Approx(a.tct));
  CHECK(b.success == a.success);
  CHECK_THROWS_AS(score_trial(std::vector<WalkSample>{}, 1, {}, l, 0.0), Error);
}

TEST_CASE("trace and metrics JSONL round trip") {
  const auto l = build_lanes(8);
  const auto trace = sampled(0.0, 2.0, 60, [&](double t) { return 0.1 * t; });
  std::stringstream ss;
  write_trace_jsonl(ss, trace);
  CHECK(read_trace_jsonl(ss) == trace);

  const std::vector<WalkTrialMetrics> ms{score_trial(trace, 1, {}, l, 0.0), score_trial(trace, 4, {}, l, 0.0)};
  std::stringstream ms_io;
  write_metrics_jsonl(ms_io, ms);
  CHECK(read_metrics_jsonl(ms_io) == ms);
}

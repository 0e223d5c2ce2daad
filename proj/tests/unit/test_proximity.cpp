#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "abi/common/error.hpp"
#include "abi/proximity/discrete_model.hpp"
#include "abi/proximity/hand_metrics.hpp"
#include "abi/proximity/layers.hpp"
#include "abi/proximity/sensor_fusion.hpp"

using namespace abi;
using namespace abi::proximity;
using doctest::Approx;

TEST_CASE("uniform partition divides the range evenly") {
  const auto five = partition_uniform({0.125, 0.625}, 5);
  REQUIRE(five.size() == 5);
  for (std::size_t i = 0; i <= 5; ++i) CHECK(five.boundaries()[i] == Approx(0.125 + 0.1 * i).epsilon(1e-12));
  for (std::size_t i = 0; i < 5; ++i) CHECK(five.thickness(i) == Approx(0.1).epsilon(1e-12));

  const auto one = partition_uniform({0.125, 0.625}, 1);
  REQUIRE(one.size() == 1);
  CHECK(one.lower(0) == 0.125);
  CHECK(one.upper(0) == 0.625);

  const auto twelve = partition_uniform({0.125, 0.725}, 12);
  for (std::size_t i = 0; i < 12; ++i) CHECK(twelve.thickness(i) == Approx(0.05).epsilon(1e-12));

  CHECK_THROWS_AS(partition_uniform({0.125, 0.625}, 0), Error);
  CHECK_THROWS_AS(partition_uniform({0.7, 0.6}, 3), Error);
}

TEST_CASE("guideline partition follows the zone rounding rule") {
  const InteractionBounds bounds{0.125, 0.725};
  const auto g = partition_guideline(bounds);
  // outward half 0.3 m in zones of 0.1 m: round(0.1/0.078)=1, round(0.1/0.042)=2, round(0.1/0.030)=3
  const std::vector<double> outward{0.425, 0.525, 0.575, 0.625, 0.625 + 0.1 / 3, 0.625 + 0.2 / 3, 0.725};
  REQUIRE(g.size() == 12);
  const auto& b = g.boundaries();
  for (std::size_t i = 0; i < outward.size(); ++i) {
    CHECK(b[6 + i] == Approx(outward[i]).epsilon(1e-12));
    // inward half mirrors the outward half around the rest position
    CHECK(b[6 - i] == Approx(2 * 0.425 - outward[i]).epsilon(1e-12));
  }
  CHECK(g.reference_point() == Approx(0.425));
}

TEST_CASE("nominal thicknesses are zone overshoot mean plus two sd") {
  CHECK(nominal_thickness(Zone::Near) == 0.078);
  CHECK(nominal_thickness(Zone::Medium) == 0.042);
  CHECK(nominal_thickness(Zone::Far) == 0.030);
  CHECK(0.044 + 2 * 0.017 == Approx(nominal_thickness(Zone::Near)).epsilon(1e-9));
  CHECK(0.016 + 2 * 0.007 == Approx(nominal_thickness(Zone::Far)).epsilon(1e-9));
  // published medium value is 1 mm above mean + 2 sd (0.021 + 0.020)
  CHECK(std::abs(0.021 + 2 * 0.010 - nominal_thickness(Zone::Medium)) <= 0.001 + 1e-12);
}

TEST_CASE("zones are thirds of each half-range measured from rest") {
  const InteractionBounds b{0.125, 0.725};
  CHECK(zone_of(b, 0.43) == Zone::Near);
  CHECK(zone_of(b, 0.42) == Zone::Near);
  CHECK(zone_of(b, 0.55) == Zone::Medium);
  CHECK(zone_of(b, 0.30) == Zone::Medium);
  CHECK(zone_of(b, 0.70) == Zone::Far);
  CHECK(zone_of(b, 0.15) == Zone::Far);
}

TEST_CASE("locate uses half-open layers") {
  const auto l = partition_uniform({0.125, 0.625}, 5);
  CHECK(locate(l, 0.30) == std::optional<std::size_t>(1));
  CHECK(locate(l, 0.125) == std::optional<std::size_t>(0));
  CHECK(locate(l, 0.225) == std::optional<std::size_t>(1));
  CHECK_FALSE(locate(l, 0.625).has_value());
  CHECK_FALSE(locate(l, 0.124).has_value());

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 0.8);
  for (int i = 0; i < 10000; ++i) {
    const double d = u(rng);
    std::optional<std::size_t> brute;
    for (std::size_t k = 0; k < l.size(); ++k) {
      if (d >= l.lower(k) && d < l.upper(k)) brute = k;
    }
    CHECK(locate(l, d) == brute);
  }
}

TEST_CASE("discrete model boundaries are midpoints of class means") {
  std::vector<LabeledDistance> s{{0, 0.2}, {1, 0.5}, {2, 0.8}};
  const auto m = fit_discrete_model(s);
  REQUIRE(m.decision_boundaries.size() == 2);
  CHECK(m.decision_boundaries[0] == Approx(0.35));
  CHECK(m.decision_boundaries[1] == Approx(0.65));
  CHECK(classify_discrete(m, 0.4) == 1);
  CHECK(classify_discrete(m, 0.35) == 0);
  CHECK(classify_discrete(m, 0.99) == 2);
  CHECK(classify_discrete(m, 0.0) == 0);

  const std::vector<LabeledDistance> single{{0, 0.3}, {0, 0.6}};
  const auto one = fit_discrete_model(single);
  CHECK(one.decision_boundaries.empty());
  CHECK(classify_discrete(one, 0.0) == 0);
  CHECK(classify_discrete(one, 1.0) == 0);
}

TEST_CASE("discrete model separates tight synthetic clusters") {
  std::mt19937_64 rng(11);
  std::vector<LabeledDistance> s;
  for (std::size_t layer = 0; layer < 4; ++layer) {
    std::normal_distribution<double> g(0.125 + 0.25 * layer, 0.02);
    for (int i = 0; i < 50; ++i) s.push_back({layer, g(rng)});
  }
  const auto m = fit_discrete_model(s);
  for (const auto& x : s) CHECK(classify_discrete(m, x.normalized_distance) == x.layer);
}

TEST_CASE("discrete model rejects missing layers and unordered means") {
  const std::vector<LabeledDistance> gap{{0, 0.2}, {2, 0.8}};
  CHECK_THROWS_AS(fit_discrete_model(gap), Error);
  const std::vector<LabeledDistance> unordered{{0, 0.8}, {1, 0.2}};
  CHECK_THROWS_AS(fit_discrete_model(unordered), Error);
}

TEST_CASE("personal space normalization") {
  const std::vector<double> obs{0.2, 0.5, 0.3};
  const auto p = PersonalSpace::from_observations(obs);
  CHECK(p.observed_min == 0.2);
  CHECK(p.observed_max == 0.5);
  CHECK(p.normalize(0.35) == Approx(0.5));
  CHECK(p.normalize(0.2) == 0.0);
  CHECK(p.normalize(0.5) == 1.0);
}

TEST_CASE("one Kalman step matches the hand computation") {
  // predict: P = 0.01 + 1e-5; K = P / (P + r); x = 0.2 + K (0.18 - 0.2); P' = (1 - K) P
  const SensorState s0{0.20, 0.01, Sensor::S1};
  const auto s1 = fuse_step(s0, {0.18, 0.0, true}, {1e-5, 4e-4});
  CHECK(s1.estimate == Approx(0.18076849183477425).epsilon(1e-12));
  CHECK(s1.variance == Approx(3.8463016330451423e-4).epsilon(1e-12));
  CHECK(s1.active_sensor == Sensor::S1);

  const auto s2 = fuse_step(s0, {0.10, 0.35, false}, {1e-5, 4e-4});
  CHECK(s2.active_sensor == Sensor::S2);
  CHECK(s2.estimate > 0.2);
}

TEST_CASE("constant distance tracking converges") {
  const FusionParams p{1e-5, 4e-4};
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, std::sqrt(p.measurement_var));
  SensorState s{0.0, 1.0, Sensor::S1};
  const double truth = 0.35;
  for (int i = 0; i < 1000; ++i) s = fuse_step(s, {truth + noise(rng), 0.0, true}, p);
  CHECK(std::abs(s.estimate - truth) < 2 * std::sqrt(p.measurement_var));
}

namespace {

std::vector<DistanceSample> reach_trace(double start, double center, double excursion, double confirm, double rate = 100) {
  // linear reach to center + excursion by t = 1, back to center by t = 1.5, still afterwards
  std::vector<DistanceSample> tr;
  const double end = confirm + kDefaultHoldWindow + 0.5;
  for (int k = 0; k / rate <= end; ++k) {
    const double t = k / rate;
    double d;
    if (t <= 1.0) {
      d = start + (center + excursion - start) * t;
    } else if (t <= 1.5) {
      d = center + excursion * (1.5 - t) / 0.5;
    } else {
      d = center;
    }
    tr.push_back({t, d});
  }
  return tr;
}

}  // namespace

TEST_CASE("hand metrics on constructed reaches") {
  SUBCASE("still hold at the center") {
    const auto tr = reach_trace(0.3, 0.5, 0.0, 2.0);
    const auto m = hand_trial_metrics(tr, {0.45, 0.55}, 2.0);
    CHECK(m.overshoot_error == Approx(0.05).epsilon(1e-6));  // entry offset at the lower edge
    CHECK(m.holding_error == Approx(0.0));
    CHECK(m.tct == Approx(2.0));
  }
  SUBCASE("injected 3 cm excursion") {
    const auto tr = reach_trace(0.3, 0.5, 0.03, 2.0);
    const auto m = hand_trial_metrics(tr, {0.49, 0.51}, 2.0);
    CHECK(m.overshoot_error == Approx(0.030).epsilon(1e-9));
  }
  SUBCASE("translation invariance") {
    auto tr = reach_trace(0.3, 0.5, 0.02, 2.0);
    const auto a = hand_trial_metrics(tr, {0.47, 0.53}, 2.0);
    for (auto& s : tr) s.d += 0.05;
    const auto b = hand_trial_metrics(tr, {0.52, 0.58}, 2.0);
    CHECK(a.overshoot_error == Approx(b.overshoot_error).epsilon(1e-9));
    CHECK(a.holding_error == Approx(b.holding_error).epsilon(1e-9));
  }
  SUBCASE("never reached") {
    const auto tr = reach_trace(0.3, 0.4, 0.0, 2.0);
    CHECK_THROWS_AS(hand_trial_metrics(tr, {0.49, 0.51}, 2.0), Error);
  }
  SUBCASE("hold drift") {
    auto tr = reach_trace(0.3, 0.5, 0.0, 2.0);
    for (auto& s : tr) {
      if (s.t > 3.0) s.d = 0.5 + 0.01;
    }
    const auto m = hand_trial_metrics(tr, {0.45, 0.55}, 2.0);
    CHECK(m.holding_error == Approx(0.01).epsilon(1e-9));
  }
}

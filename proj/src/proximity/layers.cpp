#include "abi/proximity/layers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abi/common/error.hpp"

namespace abi::proximity {

void InteractionBounds::validate() const {
  if (!(min_distance > 0.0 && min_distance < max_distance) || !std::isfinite(max_distance)) {
    fail(ErrorKind::InvalidArgument, "interaction bounds need 0 < min < max");
  }
}

const char* to_string(Zone zone) {
  switch (zone) {
    case Zone::Near: return "near";
    case Zone::Medium: return "medium";
    case Zone::Far: return "far";
  }
  return "?";
}

Zone zone_of(const InteractionBounds& bounds, double distance) {
  const double ref = bounds.reference_point();
  const double half = distance >= ref ? bounds.max_distance - ref : ref - bounds.min_distance;
  const double frac = std::abs(distance - ref) / half;
  if (frac < 1.0 / 3.0) return Zone::Near;
  if (frac < 2.0 / 3.0) return Zone::Medium;
  return Zone::Far;
}

LayerSet::LayerSet(std::vector<double> boundaries, double reference_point)
    : boundaries_(std::move(boundaries)), reference_point_(reference_point) {
  if (boundaries_.size() < 2) fail(ErrorKind::InvalidArgument, "a layer set needs at least one layer");
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (!(boundaries_[i] > boundaries_[i - 1])) {
      fail(ErrorKind::InvalidArgument, "layer boundaries must be strictly increasing");
    }
  }
}

LayerSet partition_uniform(const InteractionBounds& bounds, int n_layers) {
  bounds.validate();
  if (n_layers < 1) fail(ErrorKind::InvalidArgument, "n_layers must be >= 1");
  const double range = bounds.max_distance - bounds.min_distance;
  std::vector<double> b(static_cast<std::size_t>(n_layers) + 1);
  for (int i = 0; i <= n_layers; ++i) {
    b[static_cast<std::size_t>(i)] = bounds.min_distance + range * i / n_layers;
  }
  b.front() = bounds.min_distance;
  b.back() = bounds.max_distance;
  return LayerSet(std::move(b), bounds.reference_point());
}

namespace {

// Layer edges of one direction, ordered from the rest position outwards
// (excluding the rest position itself, including the bound).
std::vector<double> guideline_offsets(double half_range) {
  std::vector<double> offsets;
  const double zone_len = half_range / 3.0;
  const Zone zones[] = {Zone::Near, Zone::Medium, Zone::Far};
  for (int z = 0; z < 3; ++z) {
    const double nominal = nominal_thickness(zones[z]);
    const int count = std::max(1, static_cast<int>(std::lround(zone_len / nominal)));
    for (int k = 1; k <= count; ++k) {
      offsets.push_back(zone_len * z + zone_len * k / count);
    }
  }
  offsets.back() = half_range;
  return offsets;
}

}  // namespace

LayerSet partition_guideline(const InteractionBounds& bounds) {
  bounds.validate();
  const double ref = bounds.reference_point();
  const double inward = ref - bounds.min_distance;
  const double outward = bounds.max_distance - ref;
  const double needed = nominal_thickness(Zone::Near);
  if (inward < needed || outward < needed) {
    fail(ErrorKind::InvalidArgument,
         "each half of the interaction range must be at least " + std::to_string(needed) + " m");
  }

  std::vector<double> b;
  const auto in = guideline_offsets(inward);
  for (auto it = in.rbegin(); it != in.rend(); ++it) b.push_back(ref - *it);
  b.front() = bounds.min_distance;
  b.push_back(ref);
  for (double off : guideline_offsets(outward)) b.push_back(ref + off);
  b.back() = bounds.max_distance;
  return LayerSet(std::move(b), ref);
}

std::optional<std::size_t> locate(const LayerSet& layers, double distance) {
  const auto& b = layers.boundaries();
  if (!(distance >= b.front() && distance < b.back())) return std::nullopt;
  const auto it = std::upper_bound(b.begin(), b.end(), distance);
  return static_cast<std::size_t>(it - b.begin()) - 1;
}

PersonalSpace PersonalSpace::from_observations(std::span<const double> distances) {
  if (distances.empty()) fail(ErrorKind::InvalidData, "no observed distances");
  const auto [lo, hi] = std::minmax_element(distances.begin(), distances.end());
  PersonalSpace space{*lo, *hi};
  space.validate();
  return space;
}

void PersonalSpace::validate() const {
  if (!(observed_min < observed_max)) {
    fail(ErrorKind::InvalidData, "personal space needs observed_min < observed_max");
  }
}

double PersonalSpace::normalize(double distance) const {
  return (distance - observed_min) / (observed_max - observed_min);
}

}  // namespace abi::proximity

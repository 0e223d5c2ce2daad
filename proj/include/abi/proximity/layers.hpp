#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace abi::proximity {

/// Reachable range of the hand along the line of sight, in meters from the eyes.
/// The near limit defaults to the near point of the eye.
struct InteractionBounds {
  double min_distance = 0.125;
  double max_distance = 0.0;  // arm length

  void validate() const;
  double reference_point() const { return 0.5 * (min_distance + max_distance); }
};

enum class Zone { Near, Medium, Far };

const char* to_string(Zone zone);

/// Layer thickness that keeps a zone's overshoot inside one layer
/// (zone mean overshoot + 2 sd).
constexpr double nominal_thickness(Zone zone) {
  switch (zone) {
    case Zone::Near: return 0.078;
    case Zone::Medium: return 0.042;
    case Zone::Far: return 0.030;
  }
  return 0.0;
}

/// Which third of the travel range a distance falls into, measured from the
/// rest position towards the bound on the same side.
Zone zone_of(const InteractionBounds& bounds, double distance);

/// Parallel layers partitioning the interaction range; layer i covers
/// [boundaries[i], boundaries[i+1]).
class LayerSet {
 public:
  LayerSet(std::vector<double> boundaries, double reference_point);

  std::size_t size() const { return boundaries_.size() - 1; }
  const std::vector<double>& boundaries() const { return boundaries_; }
  double reference_point() const { return reference_point_; }

  double lower(std::size_t layer) const { return boundaries_.at(layer); }
  double upper(std::size_t layer) const { return boundaries_.at(layer + 1); }
  double center(std::size_t layer) const { return 0.5 * (lower(layer) + upper(layer)); }
  double thickness(std::size_t layer) const { return upper(layer) - lower(layer); }

 private:
  std::vector<double> boundaries_;
  double reference_point_;
};

LayerSet partition_uniform(const InteractionBounds& bounds, int n_layers);

/// Zone-dependent partition: thick layers close to the rest position, thin
/// layers towards the limits of reach. Each zone holds
/// max(1, round(zone_length / nominal)) equal layers.
LayerSet partition_guideline(const InteractionBounds& bounds);

/// Index of the layer containing `distance`, or nullopt when outside the set.
std::optional<std::size_t> locate(const LayerSet& layers, double distance);

/// Per-user range of comfortable hand distances.
struct PersonalSpace {
  double observed_min = 0.0;
  double observed_max = 1.0;

  static PersonalSpace from_observations(std::span<const double> distances);

  void validate() const;
  double normalize(double distance) const;
};

}  // namespace abi::proximity

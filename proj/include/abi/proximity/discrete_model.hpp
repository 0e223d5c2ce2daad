#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace abi::proximity {

struct LabeledDistance {
  std::size_t layer = 0;
  double normalized_distance = 0.0;
};

/// Per-user nearest-mean classifier for the discrete (raise-and-hold) mode.
struct DiscreteLayerModel {
  std::vector<double> class_means;
  std::vector<double> decision_boundaries;  // midpoints of adjacent means

  std::size_t layers() const { return class_means.size(); }
};

/// Fits class means from labeled samples. Throws invalid-data when a layer
/// has no samples or the means are not strictly increasing.
DiscreteLayerModel fit_discrete_model(std::span<const LabeledDistance> samples);

/// A distance exactly on a boundary resolves to the lower layer.
std::size_t classify_discrete(const DiscreteLayerModel& model, double normalized_distance);

}  // namespace abi::proximity

#include "abi/proximity/discrete_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abi/common/error.hpp"

namespace abi::proximity {

DiscreteLayerModel fit_discrete_model(std::span<const LabeledDistance> samples) {
  if (samples.empty()) fail(ErrorKind::InvalidData, "no samples");
  std::size_t n_layers = 0;
  for (const auto& s : samples) {
    if (!std::isfinite(s.normalized_distance)) fail(ErrorKind::InvalidData, "non-finite sample");
    n_layers = std::max(n_layers, s.layer + 1);
  }

  std::vector<double> sum(n_layers, 0.0);
  std::vector<std::size_t> count(n_layers, 0);
  for (const auto& s : samples) {
    sum[s.layer] += s.normalized_distance;
    ++count[s.layer];
  }

  DiscreteLayerModel model;
  for (std::size_t i = 0; i < n_layers; ++i) {
    if (count[i] == 0) fail(ErrorKind::InvalidData, "layer " + std::to_string(i) + " has no samples");
    model.class_means.push_back(sum[i] / static_cast<double>(count[i]));
  }
  for (std::size_t i = 1; i < n_layers; ++i) {
    if (!(model.class_means[i] > model.class_means[i - 1])) {
      fail(ErrorKind::InvalidData, "layer means are not strictly increasing");
    }
    model.decision_boundaries.push_back(0.5 * (model.class_means[i - 1] + model.class_means[i]));
  }
  return model;
}

std::size_t classify_discrete(const DiscreteLayerModel& model, double normalized_distance) {
  const auto& b = model.decision_boundaries;
  // first boundary >= d: everything up to and including a boundary stays below it
  return static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), normalized_distance) - b.begin());
}

}  // namespace abi::proximity

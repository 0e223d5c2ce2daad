#include "abi/proximity/sensor_fusion.hpp"

#include <cmath>

#include "abi/common/error.hpp"

namespace abi::proximity {

SensorState fuse_step(const SensorState& state, const SensorReading& reading,
                      const FusionParams& params) {
  if (!(params.process_var > 0.0 && params.measurement_var > 0.0)) {
    fail(ErrorKind::InvalidArgument, "Kalman noise variances must be positive");
  }
  const Sensor source = reading.s1_sees_body ? Sensor::S1 : Sensor::S2;
  const double z = source == Sensor::S1 ? reading.s1 : reading.s2;
  if (!std::isfinite(z) || !std::isfinite(state.estimate) || !(state.variance > 0.0)) {
    fail(ErrorKind::InvalidData, "non-finite sensor reading or filter state");
  }

  const double predicted_var = state.variance + params.process_var;
  const double gain = predicted_var / (predicted_var + params.measurement_var);
  return SensorState{
      state.estimate + gain * (z - state.estimate),
      (1.0 - gain) * predicted_var,
      source,
  };
}

}  // namespace abi::proximity

#pragma once

namespace abi::proximity {

enum class Sensor { S1, S2 };

/// Filtered hand-to-body distance from a wrist-worn pair of IR sensors.
struct SensorState {
  double estimate = 0.0;  // m
  double variance = 1.0;  // m^2
  Sensor active_sensor = Sensor::S1;
};

struct SensorReading {
  double s1 = 0.0;
  double s2 = 0.0;
  bool s1_sees_body = true;
};

struct FusionParams {
  double process_var = 1e-5;      // q, m^2
  double measurement_var = 4e-4;  // r, m^2
};

/// Distance at which the first sensor loses sight of the body on the
/// prototype hardware.
inline constexpr double kHandoverDistance = 0.20;

/// Sensor 1 while it sees the body, otherwise sensor 2, followed by one
/// predict/update cycle of a constant-position Kalman filter.
SensorState fuse_step(const SensorState& state, const SensorReading& reading,
                      const FusionParams& params = {});

}  // namespace abi::proximity

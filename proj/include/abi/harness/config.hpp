#pragma once

#include <string>
#include <string_view>

#include "abi/harness/experiment.hpp"

namespace abi::harness {

/// Parses an experiment config document. Unknown keys are errors.
///
/// {
///   "technique": "walkline" | "foottap" | "proximity",       (required)
///   "factors": { "<factor>": [levels...] | level, ... },
///   "trials": int, "participants": int, "seed": uint, "threads": int,
///   "out": "path",
///   "walk": { "preset": "default" | "noiseless", <WalkBehavior field>: number, ... },
///   "scatter": { "preset": "direct" | "indirect", "row_sd": [m, ...], "radial_aspect": r },
///   "indirect_scatter": { same as scatter },
///   "calibration_taps": int,
///   "reach": { "near" | "medium" | "far": { "overshoot_mean", "overshoot_sd", "drift_sd" },
///              "base_duration", "seconds_per_meter", "confirm_delay", "hold_window",
///              "drift_corr_time", "sample_rate" }
/// }
///
/// Throws invalid-config on any schema violation.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);

}  // namespace abi::harness

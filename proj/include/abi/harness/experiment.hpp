#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abi/gaitsim/hand.hpp"
#include "abi/gaitsim/taps.hpp"
#include "abi/gaitsim/walk.hpp"
#include "abi/harness/records.hpp"

namespace abi::harness {

/// A simulated experiment: a full-factorial grid of condition cells, each
/// run `trials` times per participant.
///
/// Factors per technique (defaults in brackets):
///   walkline:  lanes [8, 12, 16], selection_time [1/3, 2/3, 1]
///   foottap:   rows [1, 2, 3], cols [2, 4, 6], indirect [0]
///   proximity: layers [12, 24, 36, 48, 60, 72], arm_length [0.59], guideline [0]
struct ExperimentConfig {
  Technique technique = Technique::Walkline;
  std::map<std::string, std::vector<double>> factors;  // missing factors take the defaults
  int trials = 100;                                     // per cell and participant
  int participants = 1;
  std::uint64_t seed = 1;
  int threads = 1;
  std::optional<std::string> out;

  gaitsim::WalkBehavior walk;
  gaitsim::TapScatterParams scatter = gaitsim::TapScatterParams::direct();
  gaitsim::TapScatterParams indirect_scatter = gaitsim::TapScatterParams::indirect();
  int calibration_taps = 10;  // per cell, for indirect classification
  gaitsim::HandReachParams reach;

  void validate() const;
};

/// Default factor levels for a technique.
std::map<std::string, std::vector<double>> default_factors(Technique t);

/// Condition cells in row-major order of the sorted factor names.
std::vector<std::map<std::string, double>> condition_cells(const ExperimentConfig& config);

/// Per-trial seed; independent of execution order.
std::uint64_t trial_seed(std::uint64_t master, std::size_t condition_index, std::size_t trial_index);

/// Runs every cell for every participant, in the participant's balanced
/// Latin square order, and returns the records in canonical order. The
/// result does not depend on `threads`.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config);

}  // namespace abi::harness

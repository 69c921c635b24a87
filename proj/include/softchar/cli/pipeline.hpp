#pragma once

#include <optional>
#include <string>
#include <vector>

#include "softchar/cli/config.hpp"
#include "softchar/fitting.hpp"

namespace softchar::cli {

struct ScenarioWinner {
  fitting::FitScenario scenario;
  fitting::FitResult result;
};

struct SpotOutcome {
  int spot_id = 0;
  forward::SpecimenGeometry geometry;
  fitting::Curve exp_force;
  fitting::Curve exp_torque;
  std::vector<fitting::FitResult> results;  // stable candidates, sample order
  std::vector<ScenarioWinner> winners;      // one per requested scenario
  std::size_t failed_sets = 0;
};

struct SweepReport {
  RunConfig config;
  std::size_t total_sets = 0;
  std::size_t stable_sets = 0;
  std::vector<std::size_t> unstable_indices;
  std::vector<SpotOutcome> spots;
  std::optional<fitting::GeneralizationResult> generalisation;
  std::vector<std::string> notes;
  std::string tool_version;
};

inline constexpr const char* kToolVersion = "0.1.0";

/// sample -> stability filter -> per-spot sweep -> per-scenario winners ->
/// cross-spot generalisation. Deterministic for a given config; `jobs` only
/// fans out per-set work. Throws NumericalFailure when every set of some spot
/// failed.
SweepReport run_characterisation(const RunConfig& config, int jobs = 1);

}  // namespace softchar::cli

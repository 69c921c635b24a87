#include "softchar/cli/pipeline.hpp"

#include <algorithm>

#include "softchar/cli/io.hpp"
#include "softchar/cli/synth.hpp"
#include "softchar/errors.hpp"
#include "softchar/stability.hpp"

namespace softchar::cli {

SweepReport run_characterisation(const RunConfig& config, int jobs) {
  if (config.spots.empty()) fail(ErrorKind::ConfigError, "no characterisation spots configured");

  SweepReport report;
  report.config = config;
  report.tool_version = kToolVersion;
  for (const auto& w : config.warnings) report.notes.push_back(w);

  const sampling::SampleSet sample =
      sampling::latin_hypercube(config.region, config.samples, config.seed);
  report.total_sets = sample.sets.size();

  const stability::StabilityProbe probe;
  const std::vector<std::size_t> stable = stability::stable_indices(sample.sets, probe);
  report.stable_sets = stable.size();
  {
    std::vector<bool> is_stable(sample.sets.size(), false);
    for (std::size_t i : stable) is_stable[i] = true;
    for (std::size_t i = 0; i < sample.sets.size(); ++i)
      if (!is_stable[i]) report.unstable_indices.push_back(i);
  }
  if (stable.empty())
    fail(ErrorKind::NumericalFailure, "no Drucker-stable parameter set in the sampled region");
  if (!report.unstable_indices.empty())
    report.notes.push_back("Drucker filter removed " +
                           std::to_string(report.unstable_indices.size()) + " of " +
                           std::to_string(report.total_sets) + " sampled sets");

  std::vector<fitting::Candidate> candidates;
  candidates.reserve(stable.size());
  for (std::size_t i : stable) candidates.push_back({sample.sets[i], i});

  for (const SpotConfig& spot : config.spots) {
    SpotOutcome outcome;
    outcome.spot_id = spot.id;
    outcome.geometry = spot.geometry;

    if (spot.synthetic()) {
      auto [force, torque] = synth_experiment(spot.synth->true_model, spot.geometry, config.motion,
                                              spot.synth->noise_rel, spot.synth->seed);
      outcome.exp_force = std::move(force);
      outcome.exp_torque = std::move(torque);
    } else {
      IngestInfo force_info, torque_info;
      auto [force, torque] =
          ingest_curves(*spot.force_csv, *spot.torque_csv, &force_info, &torque_info);
      outcome.exp_force = std::move(force);
      outcome.exp_torque = std::move(torque);
      if (force_info.duplicates_collapsed + torque_info.duplicates_collapsed > 0)
        report.notes.push_back(
            "spot " + std::to_string(spot.id) + ": collapsed " +
            std::to_string(force_info.duplicates_collapsed + torque_info.duplicates_collapsed) +
            " duplicate abscissae while ingesting curves");
    }

    outcome.results = fitting::evaluate_sweep(candidates, spot.geometry, config.motion,
                                              outcome.exp_force, outcome.exp_torque, jobs);
    for (const auto& r : outcome.results)
      if (!r.ok()) ++outcome.failed_sets;
    if (outcome.failed_sets == outcome.results.size())
      fail(ErrorKind::NumericalFailure,
           "spot " + std::to_string(spot.id) + ": every parameter set failed to evaluate");

    for (fitting::FitScenario scenario : config.scenarios)
      outcome.winners.push_back({scenario, fitting::select_best(outcome.results, scenario)});

    report.spots.push_back(std::move(outcome));
  }

  if (!report.spots.empty()) {
    std::vector<std::vector<fitting::FitResult>> matrix;
    matrix.reserve(report.spots.size());
    for (const auto& spot : report.spots) matrix.push_back(spot.results);
    report.generalisation = fitting::generalize(matrix);
  }
  return report;
}

}  // namespace softchar::cli

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "softchar/curve.hpp"
#include "softchar/forward.hpp"
#include "softchar/sampling.hpp"

namespace softchar::fitting {

/// The three fitting scenarios: (I) sum of both NMSE, (II) torque only,
/// (III) force only.
enum class FitScenario { SumBoth, TorqueOnly, ForceOnly };

std::string scenario_label(FitScenario s);    // "I" / "II" / "III"
std::string scenario_name(FitScenario s);     // "sum" / "torque" / "force"
FitScenario scenario_from_name(const std::string& name);
inline constexpr FitScenario kAllScenarios[] = {FitScenario::SumBoth, FitScenario::TorqueOnly,
                                                FitScenario::ForceOnly};

struct FitResult {
  constitutive::MaterialModel params;
  double nmse_force = 0.0;
  double nmse_torque = 0.0;
  double nmse_sum = 0.0;
  std::size_t set_index = 0;
  std::string status;  // empty on success, error note otherwise

  bool ok() const { return status.empty(); }
};

struct GeneralizationResult {
  constitutive::MaterialModel params;
  std::size_t set_index = 0;
  double mean_nmse = 0.0;
  double std_nmse = 0.0;  // population standard deviation over the points
  std::vector<double> per_point_nmse;
};

/// Linear interpolation of the curve onto the given abscissae; exact at the
/// original nodes. Grid points outside the abscissa hull raise a DataError
/// naming the offending value.
Curve resample(const Curve& curve, std::span<const double> grid);

/// Normalized mean squared error: (1/N) sum |sim - exp|^2 / |mean(exp)|^2.
/// The denominator is the squared mean of the experimental ordinates. For
/// near-zero-mean signals (|mean| < 0.1 mean|y|, e.g. a symmetric torque
/// sweep) the mean of magnitudes is substituted; *denominator_substituted
/// reports when that happened.
double nmse(const Curve& sim, const Curve& exp, bool* denominator_substituted = nullptr);

struct CombinedNmse {
  double force = 0.0;
  double torque = 0.0;
  double sum = 0.0;
  bool force_denominator_substituted = false;
  bool torque_denominator_substituted = false;
};

/// Resamples both simulated curves onto the experimental abscissae and
/// evaluates force NMSE, torque NMSE, and their sum.
CombinedNmse combined_nmse(const forward::SimCurves& sim, const Curve& exp_force,
                           const Curve& exp_torque);

/// One candidate parameter set; set_index is its position in the original
/// (unfiltered) sample so results stay replayable.
struct Candidate {
  constitutive::MaterialModel model;
  std::size_t set_index = 0;
};

/// simulate -> resample -> combined_nmse per candidate. Failed simulations
/// score infinite NMSE with an error note instead of aborting the sweep.
/// Results are ordered by input position regardless of the worker count.
std::vector<FitResult> evaluate_sweep(std::span<const Candidate> candidates,
                                      const forward::SpecimenGeometry& geom,
                                      const forward::MotionProfile& profile,
                                      const Curve& exp_force, const Curve& exp_torque,
                                      int jobs = 1);

std::vector<FitResult> evaluate_sweep(const sampling::SampleSet& sets,
                                      const forward::SpecimenGeometry& geom,
                                      const forward::MotionProfile& profile,
                                      const Curve& exp_force, const Curve& exp_torque,
                                      int jobs = 1);

/// Argmin of nmse_sum / nmse_torque / nmse_force per scenario I/II/III.
/// Ties break toward the lowest set_index.
FitResult select_best(std::span<const FitResult> results, FitScenario scenario);

/// Cross-point generalisation: per_point_results holds one row per
/// characterisation point, all rows evaluating the same candidates in the
/// same order. Picks the single candidate minimising the mean over points of
/// nmse_sum and reports mean +/- population standard deviation.
GeneralizationResult generalize(const std::vector<std::vector<FitResult>>& per_point_results);

}  // namespace softchar::fitting

#include "softchar/stability.hpp"

#include <vector>

#include "softchar/errors.hpp"

namespace softchar::stability {

using constitutive::MaterialModel;

namespace {

constexpr double kIncrementTolerance = -1e-9;

// Grid for one path: stretch paths span [stretch_min, stretch_max], the shear
// path spans [0, shear_max].
std::vector<double> path_grid(const StabilityProbe& probe, ProbePath path) {
  const bool shear = path == ProbePath::SimpleShear;
  const double lo = shear ? 0.0 : probe.stretch_min;
  const double hi = shear ? probe.shear_max : probe.stretch_max;
  const std::size_t n = static_cast<std::size_t>(probe.steps) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return grid;
}

void evaluate_path(const MaterialModel& model, ProbePath path, std::span<const double> grid,
                   std::span<double> out) {
  switch (path) {
    case ProbePath::Uniaxial: constitutive::uniaxial_response_batch(model, grid, out); return;
    case ProbePath::Equibiaxial: constitutive::equibiaxial_response_batch(model, grid, out); return;
    case ProbePath::SimpleShear: constitutive::shear_response_batch(model, grid, out); return;
  }
}

}  // namespace

std::string path_name(ProbePath path) {
  switch (path) {
    case ProbePath::Uniaxial: return "uniaxial";
    case ProbePath::Equibiaxial: return "equibiaxial";
    case ProbePath::SimpleShear: return "simple-shear";
  }
  return "?";
}

void StabilityProbe::validate() const {
  if (!(stretch_min > 0.0)) fail(ErrorKind::UsageError, "probe: stretch_min must be > 0");
  if (!(stretch_min < 1.0 && stretch_max > 1.0))
    fail(ErrorKind::UsageError, "probe: stretch range must contain the undeformed state");
  if (!(shear_max > 0.0)) fail(ErrorKind::UsageError, "probe: shear_max must be > 0");
  if (steps < 2) fail(ErrorKind::UsageError, "probe: steps must be >= 2");
  if (paths.empty()) fail(ErrorKind::UsageError, "probe: no paths");
}

StabilityVerdict drucker_stable(const MaterialModel& model, const StabilityProbe& probe) {
  probe.validate();
  constitutive::validate(model);

  StabilityVerdict verdict;
  std::vector<double> stress;
  for (ProbePath path : probe.paths) {
    const std::vector<double> grid = path_grid(probe, path);
    stress.resize(grid.size());
    evaluate_path(model, path, grid, stress);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double work = (stress[i + 1] - stress[i]) * (grid[i + 1] - grid[i]);
      if (work < kIncrementTolerance) {
        verdict.stable = false;
        verdict.all_violations.push_back({path, grid[i + 1]});
        break;  // first violation on this path; continue with the next path
      }
    }
  }
  if (!verdict.stable) verdict.violation = verdict.all_violations.front();
  return verdict;
}

std::vector<std::size_t> stable_indices(const std::vector<MaterialModel>& sets,
                                        const StabilityProbe& probe) {
  if (!sets.empty()) {
    const auto fam = constitutive::family(sets.front());
    for (const auto& m : sets)
      if (constitutive::family(m) != fam)
        fail(ErrorKind::UsageError, "filter_stable: mixed model families in input list");
  }
  std::vector<std::size_t> out;
  out.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (drucker_stable(sets[i], probe).stable) out.push_back(i);
  return out;
}

std::vector<MaterialModel> filter_stable(const std::vector<MaterialModel>& sets,
                                         const StabilityProbe& probe) {
  std::vector<MaterialModel> out;
  for (std::size_t i : stable_indices(sets, probe)) out.push_back(sets[i]);
  return out;
}

}  // namespace softchar::stability

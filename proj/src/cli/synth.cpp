#include "softchar/cli/synth.hpp"

#include <algorithm>
#include <cmath>

#include "softchar/errors.hpp"
#include "softchar/rng.hpp"

namespace softchar::cli {

namespace {

void add_noise(fitting::Curve* curve, double noise_rel, std::uint64_t seed, std::uint64_t stream) {
  if (noise_rel == 0.0) return;
  double max_abs = 0.0;
  for (double v : curve->y) max_abs = std::max(max_abs, std::abs(v));
  const double sigma = noise_rel * max_abs;
  if (sigma == 0.0) return;
  Rng rng(seed, stream);
  for (double& v : curve->y) v += sigma * rng.gaussian();
}

}  // namespace

std::pair<fitting::Curve, fitting::Curve> synth_experiment(
    const constitutive::MaterialModel& true_model, const forward::SpecimenGeometry& geom,
    const forward::MotionProfile& profile, double noise_rel, std::uint64_t seed) {
  if (noise_rel < 0.0) fail(ErrorKind::UsageError, "synth_experiment: noise_rel must be >= 0");
  forward::SimCurves sim = forward::simulate(true_model, geom, profile);
  add_noise(&sim.force_curve, noise_rel, seed, rng_stream::synth_noise(0));
  add_noise(&sim.torque_curve, noise_rel, seed, rng_stream::synth_noise(1));
  return {std::move(sim.force_curve), std::move(sim.torque_curve)};
}

}  // namespace softchar::cli

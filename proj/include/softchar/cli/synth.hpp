#pragma once

#include <cstdint>
#include <utility>

#include "softchar/constitutive.hpp"
#include "softchar/curve.hpp"
#include "softchar/forward.hpp"

namespace softchar::cli {

/// Synthetic experiment: forward curves of the true model with additive
/// zero-mean Gaussian noise of standard deviation noise_rel * max|ordinate|
/// per curve, fully determined by the seed. noise_rel = 0 returns the forward
/// curves bit-exactly.
std::pair<fitting::Curve, fitting::Curve> synth_experiment(
    const constitutive::MaterialModel& true_model, const forward::SpecimenGeometry& geom,
    const forward::MotionProfile& profile, double noise_rel, std::uint64_t seed);

}  // namespace softchar::cli

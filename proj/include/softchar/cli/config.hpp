#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "softchar/constitutive.hpp"
#include "softchar/fitting.hpp"
#include "softchar/forward.hpp"
#include "softchar/sampling.hpp"

namespace softchar::cli {

/// Ground-truth generator settings for one spot (stands in for a physical
/// specimen when no measured CSVs are given).
struct SynthSpec {
  constitutive::MaterialModel true_model;
  double noise_rel = 0.0;
  std::uint64_t seed = 0;
  bool seed_explicit = false;  // false: follows the run seed (and --seed overrides)
};

struct SpotConfig {
  int id = 0;
  forward::SpecimenGeometry geometry;
  std::optional<std::string> force_csv;   // resolved relative to the config file
  std::optional<std::string> torque_csv;
  std::optional<SynthSpec> synth;

  bool synthetic() const { return synth.has_value(); }
};

struct RunConfig {
  constitutive::ModelFamily model_family = constitutive::ModelFamily::Yeoh3;
  sampling::ParameterRegion region;  // already normalised
  std::size_t samples = 250;
  std::uint64_t seed = 0;
  forward::MotionProfile motion;
  std::vector<fitting::FitScenario> scenarios;
  std::vector<SpotConfig> spots;

  std::vector<std::string> warnings;  // e.g. inverted-bound normalisation
  std::string config_path;
  std::string config_hash;  // FNV-1a 64 of the raw file bytes, hex
};

/// Parses and validates the TOML-style config. Parse errors carry the line
/// number; validation problems are collected and reported together.
RunConfig load_config(const std::string& path);

std::uint64_t fnv1a64(const void* data, std::size_t size);

}  // namespace softchar::cli

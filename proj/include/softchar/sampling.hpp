#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "softchar/constitutive.hpp"

namespace softchar::sampling {

struct ParamBound {
  std::string name;
  double low = 0.0;
  double high = 0.0;
};

/// Axis-aligned box of plausible parameters for one model family.
struct ParameterRegion {
  constitutive::ModelFamily family = constitutive::ModelFamily::NeoHookean;
  std::vector<ParamBound> bounds;  // canonical parameter order for the family

  void validate() const;
};

/// Inverted bounds (low > high) are swapped; one warning string per swap.
ParameterRegion normalised(const ParameterRegion& region, std::vector<std::string>* warnings);

/// The published regions of interest per family.
ParameterRegion default_region(constitutive::ModelFamily family);

struct SampleSet {
  std::vector<constitutive::MaterialModel> sets;
  std::uint64_t seed = 0;
  ParameterRegion region;
};

/// Plain Latin hypercube: per dimension the n samples occupy the n equal
/// strata exactly once; stratum order and within-stratum position come from
/// the seeded generator. Identical (region, n, seed) reproduce bit-identical
/// output.
SampleSet latin_hypercube(const ParameterRegion& region, std::size_t n, std::uint64_t seed);

}  // namespace softchar::sampling

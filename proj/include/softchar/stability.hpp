#pragma once

#include <optional>
#include <string>
#include <vector>

#include "softchar/constitutive.hpp"

namespace softchar::stability {

enum class ProbePath { Uniaxial, Equibiaxial, SimpleShear };

std::string path_name(ProbePath path);

/// Deformation paths scanned by the Drucker screen. The default ranges
/// bracket the strain levels of the indentation-plus-twist experiment.
struct StabilityProbe {
  std::vector<ProbePath> paths = {ProbePath::Uniaxial, ProbePath::Equibiaxial,
                                  ProbePath::SimpleShear};
  double stretch_min = 0.4;
  double stretch_max = 1.8;
  double shear_max = 1.5;
  int steps = 60;

  void validate() const;  // throws UsageError on bad ranges
};

struct Violation {
  ProbePath path;
  double parameter;  // stretch or shear value where the increment turns negative
};

struct StabilityVerdict {
  bool stable = true;
  std::optional<Violation> violation;    // first violation in probe path order
  std::vector<Violation> all_violations;  // first violation per failing path
};

/// Drucker screen: along every probe path the incremental work
/// (delta sigma) * (delta strain) must stay >= -1e-9 at every step.
StabilityVerdict drucker_stable(const constitutive::MaterialModel& model,
                                const StabilityProbe& probe = {});

/// Order-preserving subset of Drucker-stable members. All members must share
/// one model family; mixed lists are a usage error.
std::vector<constitutive::MaterialModel> filter_stable(
    const std::vector<constitutive::MaterialModel>& sets, const StabilityProbe& probe = {});

/// Indices (into the input list) of the stable members, order-preserving.
std::vector<std::size_t> stable_indices(const std::vector<constitutive::MaterialModel>& sets,
                                        const StabilityProbe& probe = {});

}  // namespace softchar::stability

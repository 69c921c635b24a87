#include "softchar/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "softchar/errors.hpp"
#include "softchar/rng.hpp"

namespace softchar::sampling {

using constitutive::ModelFamily;

void ParameterRegion::validate() const {
  const auto names = constitutive::parameter_names(family);
  if (bounds.size() != names.size())
    fail(ErrorKind::UsageError, "region: expected " + std::to_string(names.size()) +
                                    " bounds for " + constitutive::family_name(family));
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i].name != names[i])
      fail(ErrorKind::UsageError, "region: parameter " + std::to_string(i) + " must be '" +
                                      names[i] + "', got '" + bounds[i].name + "'");
    if (!(bounds[i].low < bounds[i].high))
      fail(ErrorKind::UsageError, "region: bounds for '" + bounds[i].name + "' are degenerate");
  }
}

ParameterRegion normalised(const ParameterRegion& region, std::vector<std::string>* warnings) {
  ParameterRegion out = region;
  for (ParamBound& b : out.bounds) {
    if (b.low > b.high) {
      std::swap(b.low, b.high);
      if (warnings != nullptr)
        warnings->push_back("region: bounds for '" + b.name + "' were inverted; normalised to [" +
                            std::to_string(b.low) + ", " + std::to_string(b.high) + "]");
    }
  }
  out.validate();
  return out;
}

ParameterRegion default_region(ModelFamily family) {
  switch (family) {
    case ModelFamily::Ogden1:
      return {family, {{"m1", 1.0, 8.0}, {"c1", 3e-2, 2e-1}, {"kappa", 2.5e-1, 2.5}}};
    case ModelFamily::Yeoh3:
      return {family, {{"c1", 1.4e-3, 3e-2}, {"c2", -3e-3, -4.14e-5}, {"c3", 3e-6, 3e-4}}};
    case ModelFamily::NeoHookean:
      return {family, {{"e", 1e-3, 1.0}, {"nu", 0.40, 0.49}}};
  }
  fail(ErrorKind::UsageError, "unknown model family");
}

SampleSet latin_hypercube(const ParameterRegion& region, std::size_t n, std::uint64_t seed) {
  region.validate();
  if (n < 1) fail(ErrorKind::UsageError, "latin_hypercube: n must be >= 1");

  const std::size_t dims = region.bounds.size();
  std::vector<std::vector<double>> values(dims, std::vector<double>(n));

  for (std::size_t d = 0; d < dims; ++d) {
    Rng rng(seed, rng_stream::lhs_dimension(d));

    // Seeded stratum-to-sample permutation (Fisher-Yates).
    std::vector<std::size_t> strata(n);
    for (std::size_t i = 0; i < n; ++i) strata[i] = i;
    for (std::size_t i = n - 1; i > 0; --i)
      std::swap(strata[i], strata[rng.below(i + 1)]);

    const double low = region.bounds[d].low;
    const double step = (region.bounds[d].high - low) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = rng.uniform01();
      double v = low + (static_cast<double>(strata[i]) + u) * step;
      // keep the sample inside its stratum despite rounding
      const double left = low + static_cast<double>(strata[i]) * step;
      const double right = low + static_cast<double>(strata[i] + 1) * step;
      v = std::clamp(v, left, std::nextafter(right, left));
      values[d][i] = v;
    }
  }

  SampleSet out;
  out.seed = seed;
  out.region = region;
  out.sets.reserve(n);
  std::vector<double> params(dims);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dims; ++d) params[d] = values[d][i];
    out.sets.push_back(constitutive::make_model(region.family, params));
  }
  return out;
}

}  // namespace softchar::sampling

#include "softchar/fitting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "softchar/errors.hpp"
#include "softchar/kernels.hpp"

namespace softchar::fitting {

void Curve::validate() const {
  if (x.size() != y.size()) fail(ErrorKind::DataError, "curve: abscissa/ordinate size mismatch");
  if (x.size() < 2) fail(ErrorKind::DataError, "curve: needs at least 2 points");
  const bool inc = x[1] > x[0];
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const bool step_inc = x[i + 1] > x[i];
    if (step_inc != inc || x[i + 1] == x[i])
      fail(ErrorKind::DataError,
           "curve: abscissae not strictly monotone near index " + std::to_string(i));
  }
}

double Curve::min_x() const { return std::min(x.front(), x.back()); }
double Curve::max_x() const { return std::max(x.front(), x.back()); }

Curve make_curve(std::vector<double> x, std::vector<double> y) {
  Curve c{std::move(x), std::move(y)};
  c.validate();
  return c;
}

std::string scenario_label(FitScenario s) {
  switch (s) {
    case FitScenario::SumBoth: return "I";
    case FitScenario::TorqueOnly: return "II";
    case FitScenario::ForceOnly: return "III";
  }
  return "?";
}

std::string scenario_name(FitScenario s) {
  switch (s) {
    case FitScenario::SumBoth: return "sum";
    case FitScenario::TorqueOnly: return "torque";
    case FitScenario::ForceOnly: return "force";
  }
  return "?";
}

FitScenario scenario_from_name(const std::string& name) {
  if (name == "sum" || name == "I") return FitScenario::SumBoth;
  if (name == "torque" || name == "II") return FitScenario::TorqueOnly;
  if (name == "force" || name == "III") return FitScenario::ForceOnly;
  fail(ErrorKind::ConfigError, "unknown scenario '" + name + "' (expected sum, torque, or force)");
}

Curve resample(const Curve& curve, std::span<const double> grid) {
  curve.validate();
  const double lo = curve.min_x();
  const double hi = curve.max_x();

  // Work on an ascending view of the abscissae.
  const bool inc = curve.increasing();
  const std::size_t n = curve.size();
  auto x_at = [&](std::size_t i) { return inc ? curve.x[i] : curve.x[n - 1 - i]; };
  auto y_at = [&](std::size_t i) { return inc ? curve.y[i] : curve.y[n - 1 - i]; };

  Curve out;
  out.x.assign(grid.begin(), grid.end());
  out.y.reserve(grid.size());
  for (double g : grid) {
    if (g < lo || g > hi) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", g);
      fail(ErrorKind::DataError, std::string("resample: grid point ") + buf +
                                     " lies outside the curve hull [" + std::to_string(lo) + ", " +
                                     std::to_string(hi) + "]");
    }
    // binary search for the segment containing g
    std::size_t left = 0, right = n - 1;
    while (right - left > 1) {
      const std::size_t mid = (left + right) / 2;
      if (x_at(mid) <= g)
        left = mid;
      else
        right = mid;
    }
    const double x0 = x_at(left), x1 = x_at(right);
    const double y0 = y_at(left), y1 = y_at(right);
    if (g == x0) {
      out.y.push_back(y0);
    } else if (g == x1) {
      out.y.push_back(y1);
    } else {
      const double t = (g - x0) / (x1 - x0);
      out.y.push_back(y0 + t * (y1 - y0));
    }
  }
  return out;
}

double nmse(const Curve& sim, const Curve& exp, bool* denominator_substituted) {
  if (denominator_substituted != nullptr) *denominator_substituted = false;
  if (sim.size() != exp.size())
    fail(ErrorKind::UsageError, "nmse: sim and exp must have equal point counts (" +
                                    std::to_string(sim.size()) + " vs " +
                                    std::to_string(exp.size()) + ")");
  const std::size_t n = exp.size();
  if (n == 0) fail(ErrorKind::UsageError, "nmse: empty curves");

  double mean = 0.0, mean_abs = 0.0, max_abs = 0.0;
  for (double v : exp.y) {
    mean += v;
    mean_abs += std::abs(v);
    max_abs = std::max(max_abs, std::abs(v));
  }
  mean /= static_cast<double>(n);
  mean_abs /= static_cast<double>(n);

  double denom_base = mean;
  if (std::abs(mean) < 0.1 * mean_abs) {
    // Near-zero-mean signal (a symmetric torque sweep, where the signed mean
    // is noise): the plain normalisation degenerates, so fall back to the
    // mean magnitude. Signed curves keep the plain mean: any signal whose
    // mean carries real information has |mean| comparable to mean|y|.
    denom_base = mean_abs;
    if (denominator_substituted != nullptr) *denominator_substituted = true;
  }
  if (denom_base == 0.0)
    fail(ErrorKind::DataError, "nmse: experimental signal has zero mean and zero magnitude");

  const double ss = kernels::active().sum_sq_diff(sim.y.data(), exp.y.data(), n);
  return ss / static_cast<double>(n) / (denom_base * denom_base);
}

CombinedNmse combined_nmse(const forward::SimCurves& sim, const Curve& exp_force,
                           const Curve& exp_torque) {
  exp_force.validate();
  exp_torque.validate();
  const Curve sim_force = resample(sim.force_curve, exp_force.x);
  const Curve sim_torque = resample(sim.torque_curve, exp_torque.x);
  CombinedNmse out;
  out.force = nmse(sim_force, exp_force, &out.force_denominator_substituted);
  out.torque = nmse(sim_torque, exp_torque, &out.torque_denominator_substituted);
  out.sum = out.force + out.torque;
  return out;
}

namespace {

FitResult evaluate_one(const Candidate& candidate, const forward::SpecimenGeometry& geom,
                       const forward::MotionProfile& profile, const Curve& exp_force,
                       const Curve& exp_torque) {
  FitResult r;
  r.params = candidate.model;
  r.set_index = candidate.set_index;
  try {
    const forward::SimCurves sim = forward::simulate(candidate.model, geom, profile);
    const CombinedNmse c = combined_nmse(sim, exp_force, exp_torque);
    r.nmse_force = c.force;
    r.nmse_torque = c.torque;
    r.nmse_sum = c.sum;
  } catch (const Error& err) {
    const double inf = std::numeric_limits<double>::infinity();
    r.nmse_force = inf;
    r.nmse_torque = inf;
    r.nmse_sum = inf;
    r.status = err.what();
  }
  return r;
}

}  // namespace

std::vector<FitResult> evaluate_sweep(std::span<const Candidate> candidates,
                                      const forward::SpecimenGeometry& geom,
                                      const forward::MotionProfile& profile,
                                      const Curve& exp_force, const Curve& exp_torque, int jobs) {
  if (candidates.empty()) fail(ErrorKind::UsageError, "evaluate_sweep: empty candidate list");
  exp_force.validate();
  exp_torque.validate();

  std::vector<FitResult> results(candidates.size());
  const int workers = std::max(1, jobs);
  if (workers == 1 || candidates.size() == 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i)
      results[i] = evaluate_one(candidates[i], geom, profile, exp_force, exp_torque);
    return results;
  }

  // Results land in their input slot, so worker scheduling cannot change the
  // output.
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= candidates.size()) return;
      results[i] = evaluate_one(candidates[i], geom, profile, exp_force, exp_torque);
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(workers), candidates.size());
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return results;
}

std::vector<FitResult> evaluate_sweep(const sampling::SampleSet& sets,
                                      const forward::SpecimenGeometry& geom,
                                      const forward::MotionProfile& profile,
                                      const Curve& exp_force, const Curve& exp_torque, int jobs) {
  std::vector<Candidate> candidates;
  candidates.reserve(sets.sets.size());
  for (std::size_t i = 0; i < sets.sets.size(); ++i) candidates.push_back({sets.sets[i], i});
  return evaluate_sweep(candidates, geom, profile, exp_force, exp_torque, jobs);
}

namespace {

double scenario_key(const FitResult& r, FitScenario scenario) {
  switch (scenario) {
    case FitScenario::SumBoth: return r.nmse_sum;
    case FitScenario::TorqueOnly: return r.nmse_torque;
    case FitScenario::ForceOnly: return r.nmse_force;
  }
  return r.nmse_sum;
}

}  // namespace

FitResult select_best(std::span<const FitResult> results, FitScenario scenario) {
  if (results.empty()) fail(ErrorKind::UsageError, "select_best: empty result list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    const double ki = scenario_key(results[i], scenario);
    const double kb = scenario_key(results[best], scenario);
    if (ki < kb || (ki == kb && results[i].set_index < results[best].set_index)) best = i;
  }
  return results[best];
}

GeneralizationResult generalize(const std::vector<std::vector<FitResult>>& per_point_results) {
  if (per_point_results.empty()) fail(ErrorKind::UsageError, "generalize: no points");
  const std::size_t points = per_point_results.size();
  const std::size_t m = per_point_results.front().size();
  if (m == 0) fail(ErrorKind::UsageError, "generalize: empty candidate rows");
  for (const auto& row : per_point_results) {
    if (row.size() != m) fail(ErrorKind::UsageError, "generalize: ragged result matrix");
    for (std::size_t j = 0; j < m; ++j)
      if (row[j].set_index != per_point_results.front()[j].set_index)
        fail(ErrorKind::UsageError, "generalize: candidate order differs between points");
  }

  std::size_t best = 0;
  double best_mean = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < points; ++i) mean += per_point_results[i][j].nmse_sum;
    mean /= static_cast<double>(points);
    if (mean < best_mean) {
      best_mean = mean;
      best = j;
    }
  }

  GeneralizationResult out;
  out.params = per_point_results.front()[best].params;
  out.set_index = per_point_results.front()[best].set_index;
  out.per_point_nmse.resize(points);
  for (std::size_t i = 0; i < points; ++i)
    out.per_point_nmse[i] = per_point_results[i][best].nmse_sum;
  out.mean_nmse = best_mean;
  double var = 0.0;
  for (double v : out.per_point_nmse) var += (v - best_mean) * (v - best_mean);
  out.std_nmse = std::sqrt(var / static_cast<double>(points));
  return out;
}

}  // namespace softchar::fitting

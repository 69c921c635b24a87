#include "softchar/forward.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "softchar/errors.hpp"
#include "softchar/kernels.hpp"

namespace softchar::forward {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void SpecimenGeometry::validate() const {
  if (!(indenter_diameter > 0.0))
    fail(ErrorKind::UsageError, "geometry: indenter diameter must be > 0");
  if (!(gauge_height > 0.0)) fail(ErrorKind::UsageError, "geometry: gauge height must be > 0");
}

void MotionProfile::validate(const SpecimenGeometry& geom) const {
  geom.validate();
  if (!(depth_max > 0.0 && depth_max < geom.gauge_height))
    fail(ErrorKind::UsageError, "motion: depth_max must lie in (0, gauge_height)");
  if (depth_samples < 2) fail(ErrorKind::UsageError, "motion: depth_samples must be >= 2");
  if (twist_samples < 2) fail(ErrorKind::UsageError, "motion: twist_samples must be >= 2");
  if (twist_start == twist_end)
    fail(ErrorKind::UsageError, "motion: twist sweep must cover a nonzero range");
}

std::vector<double> MotionProfile::depth_grid() const {
  const std::size_t n = static_cast<std::size_t>(depth_samples);
  std::vector<double> grid(n);
  grid.front() = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n - 1);
    grid[k] = depth_max * 0.5 * (1.0 - std::cos(kPi * t));
  }
  grid.back() = depth_max;
  return grid;
}

std::vector<double> MotionProfile::twist_grid() const {
  const std::size_t n = static_cast<std::size_t>(twist_samples);
  std::vector<double> grid(n);
  grid.front() = twist_start;
  for (std::size_t k = 1; k + 1 < n; ++k)
    grid[k] = twist_start +
              (twist_end - twist_start) * static_cast<double>(k) / static_cast<double>(n - 1);
  grid.back() = twist_end;
  return grid;
}

double contact_radius(double depth, double diameter) {
  if (depth < 0.0) fail(ErrorKind::UsageError, "contact_radius: negative depth");
  if (!(diameter > 0.0)) fail(ErrorKind::UsageError, "contact_radius: diameter must be > 0");
  const double chord = depth * (diameter - depth);
  return chord > 0.0 ? std::sqrt(chord) : 0.0;
}

namespace {

double engaged_column_stretch(const SpecimenGeometry& geom, double depth) {
  geom.validate();
  if (depth < 0.0) fail(ErrorKind::UsageError, "indentation depth must be >= 0");
  if (depth >= geom.gauge_height)
    fail(ErrorKind::InvalidDeformation,
         "indentation depth " + std::to_string(depth) + " mm would crush the " +
             std::to_string(geom.gauge_height) + " mm column");
  return 1.0 - depth / geom.gauge_height;
}

}  // namespace

double indentation_force(const constitutive::MaterialModel& model, const SpecimenGeometry& geom,
                         double depth) {
  const double stretch = engaged_column_stretch(geom, depth);
  if (depth == 0.0) return 0.0;
  const double sigma = constitutive::uniaxial_response(model, stretch);
  const double a = contact_radius(depth, geom.indenter_diameter);
  return std::abs(sigma) * kPi * a * a;
}

double torsion_torque(const constitutive::MaterialModel& model, double radius, double height,
                      double angle_rad, int simpson_intervals) {
  if (!(radius >= 0.0)) fail(ErrorKind::UsageError, "torsion: radius must be >= 0");
  if (!(height > 0.0)) fail(ErrorKind::UsageError, "torsion: column height must be > 0");
  if (radius == 0.0 || angle_rad == 0.0) return 0.0;

  int n = simpson_intervals < 2 ? 2 : simpson_intervals;
  if (n % 2 != 0) ++n;

  // Fold the sign out so T(-theta) == -T(theta) bit-exactly.
  const double theta = std::abs(angle_rad);
  const std::size_t nodes = static_cast<std::size_t>(n) + 1;
  const double dr = radius / static_cast<double>(n);

  std::vector<double> gamma(nodes);
  std::vector<double> coeff(nodes);  // Simpson weight times r^2
  for (std::size_t i = 0; i < nodes; ++i) {
    const double r = dr * static_cast<double>(i);
    gamma[i] = r * theta / height;
    const double w = (i == 0 || i + 1 == nodes) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    coeff[i] = w * r * r;
  }

  std::vector<double> tau(nodes);
  constitutive::shear_response_batch(model, gamma, tau);

  const auto& ops = kernels::active();
  const double integral = ops.dot(coeff.data(), tau.data(), nodes) * (dr / 3.0);
  const double torque = 2.0 * kPi * integral;
  return angle_rad > 0.0 ? torque : -torque;
}

double twist_torque(const constitutive::MaterialModel& model, const SpecimenGeometry& geom,
                    double depth, double angle_deg, int simpson_intervals) {
  engaged_column_stretch(geom, depth);  // range checks
  const double height = geom.gauge_height - depth;
  const double a = contact_radius(depth, geom.indenter_diameter);
  return torsion_torque(model, a, height, angle_deg * kPi / 180.0, simpson_intervals);
}

SimCurves simulate(const constitutive::MaterialModel& model, const SpecimenGeometry& geom,
                   const MotionProfile& profile) {
  profile.validate(geom);
  constitutive::validate(model);

  const std::vector<double> depths = profile.depth_grid();
  std::vector<double> force(depths.size());
  for (std::size_t k = 0; k < depths.size(); ++k)
    force[k] = indentation_force(model, geom, depths[k]);

  const std::vector<double> angles = profile.twist_grid();
  std::vector<double> torque(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k)
    torque[k] = twist_torque(model, geom, profile.depth_max, angles[k]);

  SimCurves out;
  out.force_curve = fitting::make_curve(depths, std::move(force));
  out.torque_curve = fitting::make_curve(angles, std::move(torque));
  return out;
}

}  // namespace softchar::forward

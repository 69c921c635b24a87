#pragma once

#include "softchar/constitutive.hpp"
#include "softchar/curve.hpp"

namespace softchar::forward {

/// Indenter and specimen geometry for one characterisation spot.
/// gauge_height is the effective soft-tissue column height between the
/// surface and the bone underneath; it differs per spot.
struct SpecimenGeometry {
  double indenter_diameter = 15.0;  // mm
  double gauge_height = 20.0;       // mm

  void validate() const;
};

/// Two-phase protocol: cosine-profiled indentation to depth_max, then a twist
/// sweep at full depth. Angles in degrees at the interface.
struct MotionProfile {
  double depth_max = 10.0;  // mm
  int depth_samples = 200;
  double twist_start = 22.5;  // deg
  double twist_end = -22.5;   // deg
  int twist_samples = 181;

  void validate(const SpecimenGeometry& geom) const;
  /// Cosine-spaced indentation depths: d_k = depth_max (1 - cos(pi k/(K-1)))/2.
  std::vector<double> depth_grid() const;
  std::vector<double> twist_grid() const;
};

struct SimCurves {
  fitting::Curve force_curve;   // displacement mm -> force N
  fitting::Curve torque_curve;  // rotation deg -> torque N*mm
};

/// Radius of the circle where the sphere crosses the undeformed surface:
/// a = sqrt(d (2R - d)), zero once the sphere is fully submerged (d >= 2R).
double contact_radius(double depth, double diameter);

/// Column-compression surrogate: lambda = 1 - depth/gauge_height and
/// force = |uniaxial stress| * pi * a^2. Zero at zero depth.
double indentation_force(const constitutive::MaterialModel& model, const SpecimenGeometry& geom,
                         double depth);

/// Torsion of the engaged column of height h = gauge_height - depth:
/// T = int_0^a 2 pi r^2 tau(r theta / h) dr, composite Simpson quadrature.
/// Odd in the angle.
double twist_torque(const constitutive::MaterialModel& model, const SpecimenGeometry& geom,
                    double depth, double angle_deg, int simpson_intervals = 64);

/// The quadrature itself, parameterised directly on disc radius and column
/// height (used by twist_torque and by the closed-form checks).
double torsion_torque(const constitutive::MaterialModel& model, double radius, double height,
                      double angle_rad, int simpson_intervals = 64);

/// Full forward surrogate: force curve over the cosine depth grid, torque
/// curve over the twist grid at depth_max. Deterministic.
SimCurves simulate(const constitutive::MaterialModel& model, const SpecimenGeometry& geom,
                   const MotionProfile& profile);

}  // namespace softchar::forward

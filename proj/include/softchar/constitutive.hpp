#pragma once

#include <array>
#include <span>
#include <string>
#include <variant>

#include "softchar/mat3.hpp"

namespace softchar::constitutive {

/// Deformation gradient F with its cached determinant J = det F.
class DeformationGradient {
public:
  /// Validates det F > 0; throws ErrorKind::InvalidDeformation otherwise.
  explicit DeformationGradient(const Mat3& f);

  const Mat3& matrix() const { return f_; }
  double j() const { return j_; }

  /// Right Cauchy-Green tensor C = F^T F.
  Mat3 right_cauchy_green() const { return gram(f_); }
  /// Deviatoric right Cauchy-Green tensor J^(-2/3) C.
  Mat3 deviatoric_right_cauchy_green() const;
  /// Deviatoric deformation gradient J^(-1/3) F (unit determinant).
  Mat3 deviatoric_matrix() const;

  static DeformationGradient identity() { return DeformationGradient(Mat3::identity()); }
  static DeformationGradient from_diag(double x, double y, double z) {
    return DeformationGradient(Mat3::diag(x, y, z));
  }
  /// Simple shear in the 1-2 plane: F = I + gamma e1 (x) e2.
  static DeformationGradient simple_shear(double gamma);

private:
  Mat3 f_;
  double j_;
};

/// Invariants of C: I1 = tr C, I2 = ((tr C)^2 - tr C^2)/2, I3 = det C = J^2.
struct Invariants {
  double i1 = 0.0;
  double i2 = 0.0;
  double i3 = 0.0;
};

/// Principal stretches (square roots of the eigenvalues of C), descending.
struct PrincipalStretches {
  std::array<double, 3> lambda{};
  double j = 0.0;

  /// Deviatoric stretches J^(-1/3) lambda_i; their product is 1.
  std::array<double, 3> deviatoric() const;
};

// --- material models -------------------------------------------------------

/// First-order Ogden (uncoupled): psi = c1/m1^2 (sum lt_i^m1 - 3) + k/2 (ln J)^2
/// with deviatoric stretches lt_i. Moduli in MPa.
struct Ogden1 {
  double c1 = 0.0;
  double m1 = 0.0;
  double kappa = 0.0;
};

/// Third-order Yeoh on the deviatoric first invariant:
/// psi = sum_{i=1..3} c_i (I1bar - 3)^i. Purely deviatoric: no volumetric
/// term is fitted, so volumetric deformation is energetically free.
struct Yeoh3 {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

/// Coupled compressible neo-Hookean:
/// psi = mu/2 (I1 - 3) - mu ln J + lambda/2 (ln J)^2, (mu, lambda) from (E, nu).
struct NeoHookean {
  double e = 0.0;
  double nu = 0.0;
};

using MaterialModel = std::variant<Ogden1, Yeoh3, NeoHookean>;

enum class ModelFamily { Ogden1, Yeoh3, NeoHookean };

ModelFamily family(const MaterialModel& model);
std::string family_name(ModelFamily family);
std::string family_name(const MaterialModel& model);
std::string describe(const MaterialModel& model);

/// Parameter names in canonical order (the order sampling and reports use).
std::span<const char* const> parameter_names(ModelFamily family);
std::array<double, 3> parameter_values(const MaterialModel& model);  // unused slots are 0
std::size_t parameter_count(ModelFamily family);
MaterialModel make_model(ModelFamily family, std::span<const double> params);

/// Throws ErrorKind::UsageError when parameter invariants are violated
/// (Ogden: c1 > 0, kappa > 0, m1 != 0; Yeoh: c1 > 0; NH: e > 0, 0 < nu < 0.5).
void validate(const MaterialModel& model);

struct LameParameters {
  double mu = 0.0;
  double lambda = 0.0;
};

/// mu = E / (2(1+nu)), lambda = nu E / ((1+nu)(1-2nu)).
/// Throws at the incompressible limit nu >= 0.5.
LameParameters lame_from_young_poisson(double e, double nu);

// --- pointwise operations ---------------------------------------------------

Invariants compute_invariants(const DeformationGradient& f);
PrincipalStretches principal_stretches(const DeformationGradient& f);

/// Strain-energy density in MPa. Zero in the reference configuration.
double strain_energy(const MaterialModel& model, const DeformationGradient& f);

/// Second Piola-Kirchhoff stress S = 2 dPsi/dC, analytic.
Mat3 pk2_stress(const MaterialModel& model, const DeformationGradient& f);

/// Cauchy stress sigma = J^-1 F S F^T.
Mat3 cauchy_stress(const MaterialModel& model, const DeformationGradient& f);

/// Axial Cauchy stress on the incompressible uniaxial path
/// F = diag(l, 1/sqrt(l), 1/sqrt(l)), lateral tractions eliminated.
double uniaxial_response(const MaterialModel& model, double stretch);

/// In-plane Cauchy stress on the incompressible equibiaxial path
/// F = diag(l, l, 1/l^2).
double equibiaxial_response(const MaterialModel& model, double stretch);

/// Cauchy shear stress in simple shear at amount of shear gamma. Odd in gamma.
double shear_response(const MaterialModel& model, double gamma);

// --- batch operations (kernel-dispatched for the polynomial laws) -----------

void uniaxial_response_batch(const MaterialModel& model, std::span<const double> stretch,
                             std::span<double> out);
void equibiaxial_response_batch(const MaterialModel& model, std::span<const double> stretch,
                                std::span<double> out);
void shear_response_batch(const MaterialModel& model, std::span<const double> gamma,
                          std::span<double> out);

/// Model with every energy coefficient multiplied by k (E for neo-Hookean,
/// c_i for Yeoh, c1 and kappa for Ogden). The path responses scale linearly.
MaterialModel scale_coefficients(const MaterialModel& model, double k);

}  // namespace softchar::constitutive

#include "softchar/constitutive.hpp"

#include <cmath>
#include <cstdio>

#include "softchar/errors.hpp"
#include "softchar/kernels.hpp"

namespace softchar::constitutive {

namespace {

constexpr double kMinJacobian = 1e-8;

void require_regular(const DeformationGradient& f) {
  if (f.j() < kMinJacobian)
    fail(ErrorKind::InvalidDeformation,
         "singular deformation: J = " + std::to_string(f.j()) + " for F = " + to_string(f.matrix()));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

DeformationGradient::DeformationGradient(const Mat3& f) : f_(f), j_(det(f)) {
  if (!(j_ > 0.0))
    fail(ErrorKind::InvalidDeformation,
         "invalid deformation gradient: det F = " + fmt(j_) + " for F = " + to_string(f));
}

Mat3 DeformationGradient::deviatoric_right_cauchy_green() const {
  return right_cauchy_green() * std::pow(j_, -2.0 / 3.0);
}

Mat3 DeformationGradient::deviatoric_matrix() const { return f_ * std::pow(j_, -1.0 / 3.0); }

DeformationGradient DeformationGradient::simple_shear(double gamma) {
  Mat3 f = Mat3::identity();
  f(0, 1) = gamma;
  return DeformationGradient(f);
}

ModelFamily family(const MaterialModel& model) {
  return std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Ogden1>) return ModelFamily::Ogden1;
        if constexpr (std::is_same_v<T, Yeoh3>) return ModelFamily::Yeoh3;
        if constexpr (std::is_same_v<T, NeoHookean>) return ModelFamily::NeoHookean;
      },
      model);
}

std::string family_name(ModelFamily fam) {
  switch (fam) {
    case ModelFamily::Ogden1: return "ogden1";
    case ModelFamily::Yeoh3: return "yeoh3";
    case ModelFamily::NeoHookean: return "neohookean";
  }
  return "?";
}

std::string family_name(const MaterialModel& model) { return family_name(family(model)); }

namespace {
constexpr const char* kOgdenNames[] = {"m1", "c1", "kappa"};
constexpr const char* kYeohNames[] = {"c1", "c2", "c3"};
constexpr const char* kNeoHookeanNames[] = {"e", "nu"};
}  // namespace

std::span<const char* const> parameter_names(ModelFamily fam) {
  switch (fam) {
    case ModelFamily::Ogden1: return kOgdenNames;
    case ModelFamily::Yeoh3: return kYeohNames;
    case ModelFamily::NeoHookean: return kNeoHookeanNames;
  }
  return {};
}

std::size_t parameter_count(ModelFamily fam) { return parameter_names(fam).size(); }

std::array<double, 3> parameter_values(const MaterialModel& model) {
  return std::visit(
      [](const auto& m) -> std::array<double, 3> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Ogden1>) return {m.m1, m.c1, m.kappa};
        if constexpr (std::is_same_v<T, Yeoh3>) return {m.c1, m.c2, m.c3};
        if constexpr (std::is_same_v<T, NeoHookean>) return {m.e, m.nu, 0.0};
      },
      model);
}

MaterialModel make_model(ModelFamily fam, std::span<const double> params) {
  if (params.size() != parameter_count(fam))
    fail(ErrorKind::UsageError, "make_model: expected " + std::to_string(parameter_count(fam)) +
                                    " parameters for " + family_name(fam) + ", got " +
                                    std::to_string(params.size()));
  switch (fam) {
    case ModelFamily::Ogden1: return Ogden1{params[1], params[0], params[2]};
    case ModelFamily::Yeoh3: return Yeoh3{params[0], params[1], params[2]};
    case ModelFamily::NeoHookean: return NeoHookean{params[0], params[1]};
  }
  fail(ErrorKind::UsageError, "make_model: unknown family");
}

std::string describe(const MaterialModel& model) {
  const auto names = parameter_names(family(model));
  const auto values = parameter_values(model);
  std::string out = family_name(model) + "(";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::string(names[i]) + "=" + fmt(values[i]);
  }
  return out + ")";
}

void validate(const MaterialModel& model) {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Ogden1>) {
          if (!(m.c1 > 0.0)) fail(ErrorKind::UsageError, "Ogden1: c1 must be > 0");
          if (!(m.kappa > 0.0)) fail(ErrorKind::UsageError, "Ogden1: kappa must be > 0");
          if (m.m1 == 0.0) fail(ErrorKind::UsageError, "Ogden1: m1 must be nonzero");
        } else if constexpr (std::is_same_v<T, Yeoh3>) {
          if (!(m.c1 > 0.0)) fail(ErrorKind::UsageError, "Yeoh3: c1 must be > 0");
        } else if constexpr (std::is_same_v<T, NeoHookean>) {
          if (!(m.e > 0.0)) fail(ErrorKind::UsageError, "NeoHookean: E must be > 0");
          if (!(m.nu > 0.0 && m.nu < 0.5))
            fail(ErrorKind::UsageError, "NeoHookean: nu must lie in (0, 0.5), got " + fmt(m.nu));
        }
      },
      model);
}

LameParameters lame_from_young_poisson(double e, double nu) {
  if (!(e > 0.0)) fail(ErrorKind::UsageError, "Young modulus must be > 0, got " + fmt(e));
  if (!(nu > 0.0) || nu >= 0.5)
    fail(ErrorKind::UsageError,
         "Poisson ratio must lie in (0, 0.5); nu = " + fmt(nu) + " is at or past the incompressible limit");
  LameParameters out;
  out.mu = e / (2.0 * (1.0 + nu));
  out.lambda = nu * e / ((1.0 + nu) * (1.0 - 2.0 * nu));
  return out;
}

Invariants compute_invariants(const DeformationGradient& f) {
  const Mat3 c = f.right_cauchy_green();
  const Mat3 c2 = c * c;
  Invariants inv;
  inv.i1 = trace(c);
  inv.i2 = 0.5 * (inv.i1 * inv.i1 - trace(c2));
  inv.i3 = det(c);
  return inv;
}

PrincipalStretches principal_stretches(const DeformationGradient& f) {
  const SymEigen eig = eig_sym(f.right_cauchy_green());
  PrincipalStretches out;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(eig.values[i] > 0.0))
      fail(ErrorKind::InvalidDeformation,
           "non-positive eigenvalue of C for F = " + to_string(f.matrix()));
    out.lambda[i] = std::sqrt(eig.values[i]);
  }
  out.j = f.j();
  return out;
}

std::array<double, 3> PrincipalStretches::deviatoric() const {
  const double s = std::pow(j, -1.0 / 3.0);
  return {s * lambda[0], s * lambda[1], s * lambda[2]};
}

// --- strain energy ----------------------------------------------------------

double strain_energy(const MaterialModel& model, const DeformationGradient& f) {
  require_regular(f);
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Ogden1>) {
          const auto lt = principal_stretches(f).deviatoric();
          const double lnj = std::log(f.j());
          const double dev = std::pow(lt[0], m.m1) + std::pow(lt[1], m.m1) +
                             std::pow(lt[2], m.m1) - 3.0;
          return m.c1 / (m.m1 * m.m1) * dev + 0.5 * m.kappa * lnj * lnj;
        } else if constexpr (std::is_same_v<T, Yeoh3>) {
          const Invariants inv = compute_invariants(f);
          const double i1bar = std::pow(f.j(), -2.0 / 3.0) * inv.i1;
          const double x = i1bar - 3.0;
          return x * (m.c1 + x * (m.c2 + x * m.c3));
        } else {
          const auto [mu, lambda] = lame_from_young_poisson(m.e, m.nu);
          const Invariants inv = compute_invariants(f);
          const double lnj = std::log(f.j());
          return 0.5 * mu * (inv.i1 - 3.0) - mu * lnj + 0.5 * lambda * lnj * lnj;
        }
      },
      model);
}

// --- second Piola-Kirchhoff stress -------------------------------------------

namespace {

// S for invariant-based energies with psi = psi(I1bar) (Yeoh):
// S = 2 psi'(I1bar) J^(-2/3) (I - I1/3 C^-1).
Mat3 pk2_yeoh(const Yeoh3& m, const DeformationGradient& f) {
  const Mat3 c = f.right_cauchy_green();
  const double i1 = trace(c);
  const double j23 = std::pow(f.j(), -2.0 / 3.0);
  const double x = j23 * i1 - 3.0;
  const double dw = m.c1 + x * (2.0 * m.c2 + x * (3.0 * m.c3));
  const Mat3 cinv = inverse(c);
  return (Mat3::identity() - cinv * (i1 / 3.0)) * (2.0 * dw * j23);
}

Mat3 pk2_neo_hookean(const NeoHookean& m, const DeformationGradient& f) {
  const auto [mu, lambda] = lame_from_young_poisson(m.e, m.nu);
  const Mat3 cinv = inverse(f.right_cauchy_green());
  const double lnj = std::log(f.j());
  return (Mat3::identity() - cinv) * mu + cinv * (lambda * lnj);
}

// Principal-direction form for Ogden:
// S_i = 1/lambda_i^2 [ c1/m1 (lt_i^m1 - mean) + kappa ln J ],
// mean = (sum_j lt_j^m1) / 3.
Mat3 pk2_ogden(const Ogden1& m, const DeformationGradient& f) {
  const SymEigen eig = eig_sym(f.right_cauchy_green());
  const double j = f.j();
  const double lnj = std::log(j);
  const double scale = std::pow(j, -1.0 / 3.0);

  std::array<double, 3> ltm{};
  double sum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double lam = std::sqrt(eig.values[i]);
    ltm[i] = std::pow(scale * lam, m.m1);
    sum += ltm[i];
  }

  Mat3 s = Mat3::zero();
  for (int i = 0; i < 3; ++i) {
    const double coeff =
        (m.c1 / m.m1 * (ltm[static_cast<std::size_t>(i)] - sum / 3.0) + m.kappa * lnj) /
        eig.values[static_cast<std::size_t>(i)];
    for (int r = 0; r < 3; ++r)
      for (int col = 0; col < 3; ++col)
        s(r, col) += coeff * eig.vectors(r, i) * eig.vectors(col, i);
  }
  return s;
}

}  // namespace

Mat3 pk2_stress(const MaterialModel& model, const DeformationGradient& f) {
  require_regular(f);
  return std::visit(
      [&](const auto& m) -> Mat3 {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Ogden1>) return pk2_ogden(m, f);
        else if constexpr (std::is_same_v<T, Yeoh3>) return pk2_yeoh(m, f);
        else return pk2_neo_hookean(m, f);
      },
      model);
}

Mat3 cauchy_stress(const MaterialModel& model, const DeformationGradient& f) {
  const Mat3 s = pk2_stress(model, f);
  return (f.matrix() * s * transpose(f.matrix())) * (1.0 / f.j());
}

// --- path responses ----------------------------------------------------------
//
// All three paths are isochoric, so the Yeoh deviatoric invariant reduces to
// I1 and the Ogden volumetric term drops out. The closed forms below are the
// analytic derivatives of the path energy; the test suite cross-checks them
// against central differences of strain_energy along the same paths.

namespace {

double ogden_uniaxial(const Ogden1& m, double l) {
  return m.c1 / m.m1 * (std::pow(l, m.m1) - std::pow(l, -0.5 * m.m1));
}

double ogden_equibiaxial(const Ogden1& m, double l) {
  return m.c1 / m.m1 * (std::pow(l, m.m1) - std::pow(l, -2.0 * m.m1));
}

// Simple shear: the in-plane stretches are u and 1/u with
// u^2 = 1 + g^2/2 + g sqrt(1 + g^2/4); tau = dW/dgamma.
double ogden_shear(const Ogden1& m, double gamma) {
  const double g = std::abs(gamma);
  if (g == 0.0) return 0.0;
  const double s = std::sqrt(1.0 + 0.25 * g * g);
  const double u2 = 1.0 + 0.5 * g * g + g * s;
  const double u = std::sqrt(u2);
  const double dlnu = (g + 2.0 * s - 1.0 / s) / (2.0 * u2);
  const double tau = m.c1 / m.m1 * (std::pow(u, m.m1) - std::pow(u, -m.m1)) * dlnu;
  return gamma > 0.0 ? tau : -tau;
}

void require_positive_stretch(double l) {
  if (!(l > 0.0)) fail(ErrorKind::UsageError, "stretch must be > 0, got " + fmt(l));
}

}  // namespace

double uniaxial_response(const MaterialModel& model, double stretch) {
  double out = 0.0;
  uniaxial_response_batch(model, {&stretch, 1}, {&out, 1});
  return out;
}

double equibiaxial_response(const MaterialModel& model, double stretch) {
  double out = 0.0;
  equibiaxial_response_batch(model, {&stretch, 1}, {&out, 1});
  return out;
}

double shear_response(const MaterialModel& model, double gamma) {
  double out = 0.0;
  shear_response_batch(model, {&gamma, 1}, {&out, 1});
  return out;
}

namespace {

void check_spans(std::span<const double> in, std::span<double> out) {
  if (in.size() != out.size())
    fail(ErrorKind::UsageError, "batch response: input and output sizes differ");
}

}  // namespace

void uniaxial_response_batch(const MaterialModel& model, std::span<const double> stretch,
                             std::span<double> out) {
  check_spans(stretch, out);
  for (double l : stretch) require_positive_stretch(l);
  const auto& ops = kernels::active();
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Ogden1>) {
          for (std::size_t i = 0; i < stretch.size(); ++i) out[i] = ogden_uniaxial(m, stretch[i]);
        } else if constexpr (std::is_same_v<T, Yeoh3>) {
          ops.yeoh_uniaxial(m.c1, m.c2, m.c3, stretch.data(), out.data(), stretch.size());
        } else {
          const double mu = lame_from_young_poisson(m.e, m.nu).mu;
          ops.neo_hookean_uniaxial(mu, stretch.data(), out.data(), stretch.size());
        }
      },
      model);
}

void equibiaxial_response_batch(const MaterialModel& model, std::span<const double> stretch,
                                std::span<double> out) {
  check_spans(stretch, out);
  for (double l : stretch) require_positive_stretch(l);
  const auto& ops = kernels::active();
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Ogden1>) {
          for (std::size_t i = 0; i < stretch.size(); ++i)
            out[i] = ogden_equibiaxial(m, stretch[i]);
        } else if constexpr (std::is_same_v<T, Yeoh3>) {
          ops.yeoh_equibiaxial(m.c1, m.c2, m.c3, stretch.data(), out.data(), stretch.size());
        } else {
          const double mu = lame_from_young_poisson(m.e, m.nu).mu;
          ops.neo_hookean_equibiaxial(mu, stretch.data(), out.data(), stretch.size());
        }
      },
      model);
}

void shear_response_batch(const MaterialModel& model, std::span<const double> gamma,
                          std::span<double> out) {
  check_spans(gamma, out);
  const auto& ops = kernels::active();
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Ogden1>) {
          for (std::size_t i = 0; i < gamma.size(); ++i) out[i] = ogden_shear(m, gamma[i]);
        } else if constexpr (std::is_same_v<T, Yeoh3>) {
          ops.yeoh_shear(m.c1, m.c2, m.c3, gamma.data(), out.data(), gamma.size());
        } else {
          const double mu = lame_from_young_poisson(m.e, m.nu).mu;
          ops.neo_hookean_shear(mu, gamma.data(), out.data(), gamma.size());
        }
      },
      model);
}

MaterialModel scale_coefficients(const MaterialModel& model, double k) {
  return std::visit(
      [&](const auto& m) -> MaterialModel {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Ogden1>) return Ogden1{k * m.c1, m.m1, k * m.kappa};
        else if constexpr (std::is_same_v<T, Yeoh3>) return Yeoh3{k * m.c1, k * m.c2, k * m.c3};
        else return NeoHookean{k * m.e, m.nu};
      },
      model);
}

}  // namespace softchar::constitutive

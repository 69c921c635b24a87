#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "softchar/constitutive.hpp"
#include "softchar/errors.hpp"

using namespace softchar;
using namespace softchar::constitutive;
using oracles::rel_frobenius_error;

namespace {

const MaterialModel kFixtures[] = {
    MaterialModel{Ogden1{0.0590, 1.9152, 1.0488}},
    MaterialModel{Yeoh3{0.0129, -2.016e-3, 2.7623e-4}},
    MaterialModel{NeoHookean{0.1, 0.45}},
};

DeformationGradient isochoric_uniaxial(double l) {
  return DeformationGradient::from_diag(l, 1.0 / std::sqrt(l), 1.0 / std::sqrt(l));
}

}  // namespace

TEST_CASE("deformation gradient rejects non-positive determinants") {
  CHECK_THROWS_AS(DeformationGradient(Mat3::diag(1.0, -1.0, 1.0)), Error);
  CHECK_THROWS_AS(DeformationGradient(Mat3::diag(0.0, 1.0, 1.0)), Error);
  const DeformationGradient f(Mat3::diag(2.0, 1.0, 1.0));
  CHECK(f.j() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("deviatoric accessors are unimodular") {
  Rng rng(30, 0);
  for (int t = 0; t < 10; ++t) {
    const DeformationGradient f(oracles::random_deformation_gradient(rng));
    CHECK(det(f.deviatoric_matrix()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(det(f.deviatoric_right_cauchy_green()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trace(f.deviatoric_right_cauchy_green()) ==
          doctest::Approx(trace(gram(f.deviatoric_matrix()))).epsilon(1e-12));
  }
}

TEST_CASE("invariants") {
  const Invariants id = compute_invariants(DeformationGradient::identity());
  CHECK(id.i1 == 3.0);
  CHECK(id.i2 == 3.0);
  CHECK(id.i3 == 1.0);

  const Invariants d = compute_invariants(DeformationGradient::from_diag(2.0, 1.0, 1.0));
  CHECK(d.i1 == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(d.i2 == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(d.i3 == doctest::Approx(4.0).epsilon(1e-14));

  const Invariants iso = compute_invariants(isochoric_uniaxial(1.2));
  CHECK(iso.i3 == doctest::Approx(1.0).epsilon(1e-12));

  // I3 = J^2 on random deformations
  Rng rng(31, 0);
  for (int t = 0; t < 30; ++t) {
    const DeformationGradient f(oracles::random_deformation_gradient(rng));
    const Invariants inv = compute_invariants(f);
    CHECK(inv.i3 == doctest::Approx(f.j() * f.j()).epsilon(1e-10));
  }
}

TEST_CASE("principal stretches") {
  const auto id = principal_stretches(DeformationGradient::identity());
  for (double l : id.lambda) CHECK(l == doctest::Approx(1.0).epsilon(1e-14));

  const auto d = principal_stretches(DeformationGradient::from_diag(2.0, 1.0, 0.5));
  CHECK(d.lambda[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d.lambda[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.lambda[2] == doctest::Approx(0.5).epsilon(1e-12));

  SUBCASE("simple shear stretches against the polynomial-root oracle") {
    const DeformationGradient f = DeformationGradient::simple_shear(1.0);
    const auto ps = principal_stretches(f);
    CHECK(ps.lambda[0] * ps.lambda[2] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ps.lambda[1] == doctest::Approx(1.0).epsilon(1e-10));
    const auto roots = oracles::sym_eigenvalues(f.right_cauchy_green());
    CHECK(ps.lambda[0] == doctest::Approx(std::sqrt(roots[0])).epsilon(1e-12));
  }

  SUBCASE("product equals J; deviatoric product equals one") {
    Rng rng(32, 0);
    for (int t = 0; t < 30; ++t) {
      const DeformationGradient f(oracles::random_deformation_gradient(rng));
      const auto ps = principal_stretches(f);
      CHECK(ps.lambda[0] * ps.lambda[1] * ps.lambda[2] ==
            doctest::Approx(f.j()).epsilon(1e-9));
      const auto dev = ps.deviatoric();
      CHECK(dev[0] * dev[1] * dev[2] == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("Lame conversion") {
  const auto p = lame_from_young_poisson(0.0735, 0.4434);
  CHECK(p.mu == doctest::Approx(0.025461).epsilon(1e-4));
  CHECK(p.lambda == doctest::Approx(0.19946).epsilon(1e-4));

  const auto q = lame_from_young_poisson(1.0, 0.25);
  CHECK(q.mu == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(q.lambda == doctest::Approx(0.4).epsilon(1e-12));

  CHECK_THROWS_AS(lame_from_young_poisson(0.1, 0.5), Error);
  CHECK_THROWS_AS(lame_from_young_poisson(-1.0, 0.3), Error);
}

TEST_CASE("strain energy fixtures") {
  for (const auto& model : kFixtures)
    CHECK(strain_energy(model, DeformationGradient::identity()) == 0.0);

  SUBCASE("neo-Hookean uniaxial-stretch value") {
    const NeoHookean m{0.1, 0.45};
    const auto lame = lame_from_young_poisson(m.e, m.nu);
    const DeformationGradient f = DeformationGradient::from_diag(1.1, 1.0, 1.0);
    const double lnj = std::log(1.1);
    const double expected = 0.5 * lame.mu * 0.21 - lame.mu * lnj + 0.5 * lame.lambda * lnj * lnj;
    CHECK(strain_energy(MaterialModel{m}, f) == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("Yeoh isochoric value at I1 = 3.25") {
    const Yeoh3 m{0.0129, -2.016e-3, 2.7623e-4};
    const DeformationGradient f = DeformationGradient::simple_shear(0.5);  // I1 = 3 + 0.25
    const double x = 0.25;
    const double expected = m.c1 * x + m.c2 * x * x + m.c3 * x * x * x;
    CHECK(strain_energy(MaterialModel{m}, f) == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("matches the independent energy-from-C evaluation") {
    Rng rng(33, 0);
    for (int t = 0; t < 20; ++t) {
      const Mat3 fm = oracles::random_deformation_gradient(rng);
      const DeformationGradient f(fm);
      for (const auto& model : kFixtures) {
        const double got = strain_energy(model, f);
        const double want = oracles::energy_from_c(model, f.right_cauchy_green());
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("objectivity and isotropy of the strain energy") {
  Rng rng(34, 0);
  for (int t = 0; t < 20; ++t) {
    const Mat3 fm = oracles::random_deformation_gradient(rng);
    const Mat3 q = oracles::random_rotation(rng);
    const DeformationGradient f(fm);
    const DeformationGradient qf(q * fm);
    const DeformationGradient fq(fm * q);
    for (const auto& model : kFixtures) {
      const double base = strain_energy(model, f);
      const double scale = std::max(std::abs(base), 1e-12);
      CHECK(std::abs(strain_energy(model, qf) - base) / scale < 1e-10);
      CHECK(std::abs(strain_energy(model, fq) - base) / scale < 1e-10);
    }
  }
}

TEST_CASE("pk2 stress") {
  SUBCASE("zero at the reference configuration") {
    for (const auto& model : kFixtures) {
      const Mat3 s = pk2_stress(model, DeformationGradient::identity());
      CHECK(max_abs_entry(s) <= 1e-12);
    }
  }

  SUBCASE("neo-Hookean uniaxial case matches the finite-difference oracle") {
    const MaterialModel m{NeoHookean{0.1, 0.45}};
    const DeformationGradient f = DeformationGradient::from_diag(1.2, 1.0, 1.0);
    const Mat3 want = oracles::pk2_central_difference(m, f.right_cauchy_green());
    CHECK(rel_frobenius_error(pk2_stress(m, f), want) < 1e-5);
  }

  SUBCASE("Ogden fixture on random isochoric shear") {
    const MaterialModel m{Ogden1{0.0590, 1.9152, 1.0488}};
    Rng rng(35, 0);
    for (int t = 0; t < 10; ++t) {
      const DeformationGradient f = DeformationGradient::simple_shear(rng.uniform(-0.8, 0.8));
      const Mat3 want = oracles::pk2_central_difference(m, f.right_cauchy_green());
      CHECK(rel_frobenius_error(pk2_stress(m, f), want) < 1e-5);
    }
  }

  SUBCASE("random deformations, all families, against the oracle") {
    Rng rng(36, 0);
    for (int t = 0; t < 25; ++t) {
      const DeformationGradient f(oracles::random_deformation_gradient(rng));
      for (auto family : {ModelFamily::Ogden1, ModelFamily::Yeoh3, ModelFamily::NeoHookean}) {
        const MaterialModel model = oracles::random_model(family, rng);
        const Mat3 want = oracles::pk2_central_difference(model, f.right_cauchy_green());
        CHECK(rel_frobenius_error(pk2_stress(model, f), want) < 1e-5);
      }
    }
  }
}

TEST_CASE("cauchy stress") {
  for (const auto& model : kFixtures)
    CHECK(max_abs_entry(cauchy_stress(model, DeformationGradient::identity())) <= 1e-12);

  SUBCASE("diagonal F gives diagonal stress for isotropic models") {
    const DeformationGradient f = DeformationGradient::from_diag(1.3, 0.9, 1.05);
    for (const auto& model : kFixtures) {
      const Mat3 s = cauchy_stress(model, f);
      const double scale = std::max(max_abs_entry(s), 1e-12);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (i != j) CHECK(std::abs(s(i, j)) / scale < 1e-9);
    }
  }

  SUBCASE("rotational equivariance: sigma(QF) = Q sigma(F) Q^T") {
    Rng rng(37, 0);
    for (int t = 0; t < 10; ++t) {
      const Mat3 fm = oracles::random_deformation_gradient(rng);
      const Mat3 q = oracles::random_rotation(rng);
      for (const auto& model : kFixtures) {
        const Mat3 lhs = cauchy_stress(model, DeformationGradient(q * fm));
        const Mat3 rhs = q * cauchy_stress(model, DeformationGradient(fm)) * transpose(q);
        CHECK(rel_frobenius_error(lhs, rhs) < 1e-9);
      }
    }
  }
}

namespace {

// path-energy derivative by central differences
double path_derivative(const MaterialModel& model, double x0, double h,
                       DeformationGradient (*path)(double)) {
  return (strain_energy(model, path(x0 + h)) - strain_energy(model, path(x0 - h))) / (2.0 * h);
}

DeformationGradient uniaxial_path(double l) {
  return DeformationGradient::from_diag(l, 1.0 / std::sqrt(l), 1.0 / std::sqrt(l));
}
DeformationGradient equibiaxial_path(double l) {
  return DeformationGradient::from_diag(l, l, 1.0 / (l * l));
}
DeformationGradient shear_path(double g) { return DeformationGradient::simple_shear(g); }

}  // namespace

TEST_CASE("uniaxial response") {
  for (const auto& model : kFixtures) CHECK(uniaxial_response(model, 1.0) == 0.0);

  SUBCASE("neo-Hookean closed form") {
    const MaterialModel m{NeoHookean{0.075, 0.25}};  // mu = 0.03
    CHECK(uniaxial_response(m, 1.1) == doctest::Approx(0.0090273).epsilon(1e-4));
    CHECK(uniaxial_response(m, 0.5) == doctest::Approx(-0.0525).epsilon(1e-12));
  }

  SUBCASE("matches the path-energy derivative: sigma = lambda dW/dlambda") {
    Rng rng(38, 0);
    for (int t = 0; t < 12; ++t) {
      const double l = rng.uniform(0.5, 1.6);
      for (const auto& model : kFixtures) {
        const double sigma = uniaxial_response(model, l);
        const double want = l * path_derivative(model, l, 1e-6, uniaxial_path);
        CHECK(sigma == doctest::Approx(want).epsilon(1e-6));
      }
    }
  }

  CHECK_THROWS_AS(uniaxial_response(kFixtures[0], 0.0), Error);
  CHECK_THROWS_AS(uniaxial_response(kFixtures[0], -1.0), Error);
}

TEST_CASE("equibiaxial response matches its path-energy derivative") {
  Rng rng(39, 0);
  for (int t = 0; t < 12; ++t) {
    const double l = rng.uniform(0.6, 1.5);
    for (const auto& model : kFixtures) {
      const double sigma = equibiaxial_response(model, l);
      const double want = 0.5 * l * path_derivative(model, l, 1e-6, equibiaxial_path);
      CHECK(sigma == doctest::Approx(want).epsilon(1e-6));
    }
  }
}

TEST_CASE("shear response") {
  for (const auto& model : kFixtures) CHECK(shear_response(model, 0.0) == 0.0);

  SUBCASE("neo-Hookean: tau = mu gamma") {
    const MaterialModel m{NeoHookean{0.075, 0.25}};  // mu = 0.03
    CHECK(shear_response(m, 0.5) == doctest::Approx(0.015).epsilon(1e-12));
  }

  SUBCASE("Yeoh closed form") {
    const Yeoh3 m{0.0129, -2.016e-3, 2.7623e-4};
    const double g = 0.5;
    const double expected =
        2.0 * g * (m.c1 + 2.0 * m.c2 * g * g + 3.0 * m.c3 * g * g * g * g);
    CHECK(shear_response(MaterialModel{m}, g) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(shear_response(MaterialModel{m}, g) == doctest::Approx(0.011944).epsilon(1e-4));
  }

  SUBCASE("odd in gamma, exactly") {
    Rng rng(40, 0);
    for (int t = 0; t < 10; ++t) {
      const double g = rng.uniform(0.0, 1.5);
      for (const auto& model : kFixtures)
        CHECK(shear_response(model, -g) == -shear_response(model, g));
    }
  }

  SUBCASE("matches the path-energy derivative: tau = dW/dgamma") {
    Rng rng(41, 0);
    for (int t = 0; t < 12; ++t) {
      const double g = rng.uniform(0.05, 1.4);
      for (const auto& model : kFixtures) {
        const double tau = shear_response(model, g);
        const double want = path_derivative(model, g, 1e-6, shear_path);
        CHECK(tau == doctest::Approx(want).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("isochoric consistency") {
  // on isochoric paths the Ogden volumetric term contributes nothing and the
  // Yeoh deviatoric invariant equals I1
  const DeformationGradient f = DeformationGradient::simple_shear(0.7);
  const Ogden1 og{0.05, 2.5, 1.0};
  const Ogden1 og_zero_kappa{0.05, 2.5, 1e-30};
  CHECK(strain_energy(MaterialModel{og}, f) ==
        doctest::Approx(strain_energy(MaterialModel{og_zero_kappa}, f)).epsilon(1e-14));

  const Invariants inv = compute_invariants(f);
  const double i1bar = std::pow(f.j(), -2.0 / 3.0) * inv.i1;
  CHECK(i1bar == doctest::Approx(inv.i1).epsilon(1e-12));
}

TEST_CASE("parameter validation and model plumbing") {
  CHECK_THROWS_AS(validate(MaterialModel{Ogden1{-0.1, 2.0, 1.0}}), Error);
  CHECK_THROWS_AS(validate(MaterialModel{Ogden1{0.1, 2.0, -1.0}}), Error);
  CHECK_THROWS_AS(validate(MaterialModel{Yeoh3{0.0, 1e-3, 1e-4}}), Error);
  CHECK_THROWS_AS(validate(MaterialModel{NeoHookean{0.1, 0.5}}), Error);
  CHECK_THROWS_AS(validate(MaterialModel{NeoHookean{0.1, -0.1}}), Error);
  for (const auto& model : kFixtures) CHECK_NOTHROW(validate(model));

  const MaterialModel round =
      make_model(ModelFamily::Ogden1, std::array<double, 3>{1.9152, 0.0590, 1.0488});
  CHECK(std::get<Ogden1>(round).m1 == 1.9152);
  CHECK(std::get<Ogden1>(round).c1 == 0.0590);
  CHECK(std::get<Ogden1>(round).kappa == 1.0488);
}

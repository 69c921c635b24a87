#include <doctest.h>

#include "oracles.hpp"
#include "softchar/mat3.hpp"

using softchar::Mat3;

TEST_CASE("inverse and determinant identities") {
  softchar::Rng rng(11, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat3 f = oracles::random_deformation_gradient(rng);
    const Mat3 inv = softchar::inverse(f);
    const Mat3 id = f * inv;
    CHECK(softchar::frobenius_norm(id - Mat3::identity()) < 1e-12);
    CHECK(softchar::det(f) == doctest::Approx(oracles::det3(f)).epsilon(1e-12));
  }
}

TEST_CASE("jacobi eigensolve matches characteristic-polynomial roots") {
  softchar::Rng rng(12, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat3 f = oracles::random_deformation_gradient(rng);
    const Mat3 c = softchar::gram(f);
    const auto eig = softchar::eig_sym(c);
    const auto expected = oracles::sym_eigenvalues(c);
    for (int i = 0; i < 3; ++i)
      CHECK(eig.values[i] == doctest::Approx(expected[i]).epsilon(1e-10));

    // eigenvectors reconstruct C
    Mat3 rebuilt = Mat3::zero();
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          rebuilt(i, j) += eig.values[k] * eig.vectors(i, k) * eig.vectors(j, k);
    CHECK(softchar::frobenius_norm(rebuilt - c) < 1e-10 * softchar::frobenius_norm(c) + 1e-13);
  }
}

TEST_CASE("eig_sym handles repeated eigenvalues") {
  const auto eig = softchar::eig_sym(Mat3::diag(2.0, 2.0, 2.0));
  for (double v : eig.values) CHECK(v == doctest::Approx(2.0));
  const auto eig2 = softchar::eig_sym(Mat3::identity());
  for (double v : eig2.values) CHECK(v == doctest::Approx(1.0));
}

#pragma once

#include <array>
#include <cmath>
#include <string>

namespace softchar {

/// Dense 3x3 matrix, row-major. Small enough that value semantics are free.
struct Mat3 {
  std::array<double, 9> a{};

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(3 * i + j)]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(3 * i + j)]; }

  static Mat3 identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
  static Mat3 diag(double x, double y, double z) { return {{x, 0, 0, 0, y, 0, 0, 0, z}}; }
  static Mat3 zero() { return {}; }
};

Mat3 operator*(const Mat3& lhs, const Mat3& rhs);
Mat3 operator*(const Mat3& m, double s);
Mat3 operator+(const Mat3& lhs, const Mat3& rhs);
Mat3 operator-(const Mat3& lhs, const Mat3& rhs);

Mat3 transpose(const Mat3& m);
double trace(const Mat3& m);
double det(const Mat3& m);
Mat3 inverse(const Mat3& m);

/// A^T * A (always symmetric positive semi-definite).
Mat3 gram(const Mat3& m);

double frobenius_norm(const Mat3& m);
double max_abs_entry(const Mat3& m);
std::string to_string(const Mat3& m);

/// Eigen-decomposition of a symmetric matrix. Eigenvalues descending,
/// eigenvectors stored as the corresponding columns of an orthogonal matrix.
struct SymEigen {
  std::array<double, 3> values{};
  Mat3 vectors;
};

/// Cyclic Jacobi iteration; throws ErrorKind::NumericalFailure if the
/// off-diagonal mass does not vanish within the sweep budget.
SymEigen eig_sym(const Mat3& sym);

}  // namespace softchar

#include "softchar/kernels.hpp"

namespace softchar::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_diff_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Uniaxial stretch of an incompressible column: sigma = mu (l^2 - 1/l).
void nh_uniaxial_scalar(double mu, const double* stretch, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double l = stretch[i];
    out[i] = mu * (l * l - 1.0 / l);
  }
}

// Equibiaxial stretch: sigma = mu (l^2 - 1/l^4).
void nh_equibiaxial_scalar(double mu, const double* stretch, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double l2 = stretch[i] * stretch[i];
    out[i] = mu * (l2 - 1.0 / (l2 * l2));
  }
}

void nh_shear_scalar(double mu, const double* gamma, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mu * gamma[i];
}

// dW/dI1 of the third-order Yeoh energy, x = I1 - 3.
inline double yeoh_dw(double c1, double c2, double c3, double x) {
  return c1 + x * (2.0 * c2 + x * (3.0 * c3));
}

void yeoh_uniaxial_scalar(double c1, double c2, double c3, const double* stretch, double* out,
                          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double l = stretch[i];
    const double inv = 1.0 / l;
    const double l2 = l * l;
    const double x = l2 + 2.0 * inv - 3.0;
    out[i] = 2.0 * (l2 - inv) * yeoh_dw(c1, c2, c3, x);
  }
}

void yeoh_equibiaxial_scalar(double c1, double c2, double c3, const double* stretch, double* out,
                             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double l2 = stretch[i] * stretch[i];
    const double inv4 = 1.0 / (l2 * l2);
    const double x = 2.0 * l2 + inv4 - 3.0;
    out[i] = 2.0 * (l2 - inv4) * yeoh_dw(c1, c2, c3, x);
  }
}

void yeoh_shear_scalar(double c1, double c2, double c3, const double* gamma, double* out,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double g = gamma[i];
    const double g2 = g * g;
    out[i] = 2.0 * g * (c1 + g2 * (2.0 * c2 + g2 * (3.0 * c3)));
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      "scalar",
      dot_scalar,
      sum_sq_diff_scalar,
      nh_uniaxial_scalar,
      nh_equibiaxial_scalar,
      nh_shear_scalar,
      yeoh_uniaxial_scalar,
      yeoh_equibiaxial_scalar,
      yeoh_shear_scalar,
  };
  return ops;
}

}  // namespace softchar::kernels

// AVX2/FMA variants of the batch kernels. Compiled with -mavx2 -mfma on
// x86-64 only; dispatch.cpp checks CPU support before handing these out.

#include "softchar/kernels.hpp"

#if defined(SOFTCHAR_HAVE_AVX2)

#include <immintrin.h>

namespace softchar::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_diff_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void nh_uniaxial_avx2(double mu, const double* stretch, double* out, std::size_t n) {
  const __m256d vmu = _mm256_set1_pd(mu);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d l = _mm256_loadu_pd(stretch + i);
    const __m256d v = _mm256_sub_pd(_mm256_mul_pd(l, l), _mm256_div_pd(one, l));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(vmu, v));
  }
  for (; i < n; ++i) {
    const double l = stretch[i];
    out[i] = mu * (l * l - 1.0 / l);
  }
}

void nh_equibiaxial_avx2(double mu, const double* stretch, double* out, std::size_t n) {
  const __m256d vmu = _mm256_set1_pd(mu);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d l = _mm256_loadu_pd(stretch + i);
    const __m256d l2 = _mm256_mul_pd(l, l);
    const __m256d v = _mm256_sub_pd(l2, _mm256_div_pd(one, _mm256_mul_pd(l2, l2)));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(vmu, v));
  }
  for (; i < n; ++i) {
    const double l2 = stretch[i] * stretch[i];
    out[i] = mu * (l2 - 1.0 / (l2 * l2));
  }
}

void nh_shear_avx2(double mu, const double* gamma, double* out, std::size_t n) {
  const __m256d vmu = _mm256_set1_pd(mu);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(vmu, _mm256_loadu_pd(gamma + i)));
  for (; i < n; ++i) out[i] = mu * gamma[i];
}

// c1 + x (2 c2 + 3 c3 x)
inline __m256d yeoh_dw(__m256d c1, __m256d c2x2, __m256d c3x3, __m256d x) {
  return _mm256_fmadd_pd(x, _mm256_fmadd_pd(x, c3x3, c2x2), c1);
}

void yeoh_uniaxial_avx2(double c1, double c2, double c3, const double* stretch, double* out,
                        std::size_t n) {
  const __m256d vc1 = _mm256_set1_pd(c1);
  const __m256d vc2 = _mm256_set1_pd(2.0 * c2);
  const __m256d vc3 = _mm256_set1_pd(3.0 * c3);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d three = _mm256_set1_pd(3.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d l = _mm256_loadu_pd(stretch + i);
    const __m256d inv = _mm256_div_pd(one, l);
    const __m256d l2 = _mm256_mul_pd(l, l);
    const __m256d x = _mm256_sub_pd(_mm256_fmadd_pd(two, inv, l2), three);
    const __m256d base = _mm256_sub_pd(l2, inv);
    _mm256_storeu_pd(out + i,
                     _mm256_mul_pd(_mm256_mul_pd(two, base), yeoh_dw(vc1, vc2, vc3, x)));
  }
  for (; i < n; ++i) {
    const double l = stretch[i];
    const double inv = 1.0 / l;
    const double l2 = l * l;
    const double x = l2 + 2.0 * inv - 3.0;
    out[i] = 2.0 * (l2 - inv) * (c1 + x * (2.0 * c2 + x * (3.0 * c3)));
  }
}

void yeoh_equibiaxial_avx2(double c1, double c2, double c3, const double* stretch, double* out,
                           std::size_t n) {
  const __m256d vc1 = _mm256_set1_pd(c1);
  const __m256d vc2 = _mm256_set1_pd(2.0 * c2);
  const __m256d vc3 = _mm256_set1_pd(3.0 * c3);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d three = _mm256_set1_pd(3.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d l = _mm256_loadu_pd(stretch + i);
    const __m256d l2 = _mm256_mul_pd(l, l);
    const __m256d inv4 = _mm256_div_pd(one, _mm256_mul_pd(l2, l2));
    const __m256d x = _mm256_sub_pd(_mm256_fmadd_pd(two, l2, inv4), three);
    const __m256d base = _mm256_sub_pd(l2, inv4);
    _mm256_storeu_pd(out + i,
                     _mm256_mul_pd(_mm256_mul_pd(two, base), yeoh_dw(vc1, vc2, vc3, x)));
  }
  for (; i < n; ++i) {
    const double l2 = stretch[i] * stretch[i];
    const double inv4 = 1.0 / (l2 * l2);
    const double x = 2.0 * l2 + inv4 - 3.0;
    out[i] = 2.0 * (l2 - inv4) * (c1 + x * (2.0 * c2 + x * (3.0 * c3)));
  }
}

void yeoh_shear_avx2(double c1, double c2, double c3, const double* gamma, double* out,
                     std::size_t n) {
  const __m256d vc1 = _mm256_set1_pd(c1);
  const __m256d vc2 = _mm256_set1_pd(2.0 * c2);
  const __m256d vc3 = _mm256_set1_pd(3.0 * c3);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d g = _mm256_loadu_pd(gamma + i);
    const __m256d g2 = _mm256_mul_pd(g, g);
    _mm256_storeu_pd(out + i,
                     _mm256_mul_pd(_mm256_mul_pd(two, g), yeoh_dw(vc1, vc2, vc3, g2)));
  }
  for (; i < n; ++i) {
    const double g = gamma[i];
    const double g2 = g * g;
    out[i] = 2.0 * g * (c1 + g2 * (2.0 * c2 + g2 * (3.0 * c3)));
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops = {
      "avx2",
      dot_avx2,
      sum_sq_diff_avx2,
      nh_uniaxial_avx2,
      nh_equibiaxial_avx2,
      nh_shear_avx2,
      yeoh_uniaxial_avx2,
      yeoh_equibiaxial_avx2,
      yeoh_shear_avx2,
  };
  return ops;
}

}  // namespace softchar::kernels

#endif  // SOFTCHAR_HAVE_AVX2

#include "softchar/mat3.hpp"

#include <algorithm>
#include <cstdio>

#include "softchar/errors.hpp"

namespace softchar {

Mat3 operator*(const Mat3& lhs, const Mat3& rhs) {
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += lhs(i, k) * rhs(k, j);
      out(i, j) = s;
    }
  return out;
}

Mat3 operator*(const Mat3& m, double s) {
  Mat3 out = m;
  for (double& v : out.a) v *= s;
  return out;
}

Mat3 operator+(const Mat3& lhs, const Mat3& rhs) {
  Mat3 out;
  for (std::size_t i = 0; i < 9; ++i) out.a[i] = lhs.a[i] + rhs.a[i];
  return out;
}

Mat3 operator-(const Mat3& lhs, const Mat3& rhs) {
  Mat3 out;
  for (std::size_t i = 0; i < 9; ++i) out.a[i] = lhs.a[i] - rhs.a[i];
  return out;
}

Mat3 transpose(const Mat3& m) {
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = m(j, i);
  return out;
}

double trace(const Mat3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

double det(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Mat3 inverse(const Mat3& m) {
  const double d = det(m);
  if (std::abs(d) < 1e-300) fail(ErrorKind::NumericalFailure, "singular 3x3 matrix in inverse()");
  const double inv = 1.0 / d;
  Mat3 out;
  out(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) * inv;
  out(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) * inv;
  out(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) * inv;
  out(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) * inv;
  out(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) * inv;
  out(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) * inv;
  out(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) * inv;
  out(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) * inv;
  out(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) * inv;
  return out;
}

Mat3 gram(const Mat3& m) { return transpose(m) * m; }

double frobenius_norm(const Mat3& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

double max_abs_entry(const Mat3& m) {
  double s = 0.0;
  for (double v : m.a) s = std::max(s, std::abs(v));
  return s;
}

std::string to_string(const Mat3& m) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "[[%g, %g, %g], [%g, %g, %g], [%g, %g, %g]]", m(0, 0), m(0, 1),
                m(0, 2), m(1, 0), m(1, 1), m(1, 2), m(2, 0), m(2, 1), m(2, 2));
  return buf;
}

namespace {

// One Jacobi rotation zeroing entry (p, q); accumulates rotations into v.
void jacobi_rotate(Mat3& s, Mat3& v, int p, int q) {
  const double apq = s(p, q);
  if (apq == 0.0) return;
  const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double sn = t * c;

  const double app = s(p, p), aqq = s(q, q);
  s(p, p) = c * c * app - 2.0 * sn * c * apq + sn * sn * aqq;
  s(q, q) = sn * sn * app + 2.0 * sn * c * apq + c * c * aqq;
  s(p, q) = 0.0;
  s(q, p) = 0.0;
  const int r = 3 - p - q;
  const double arp = s(r, p), arq = s(r, q);
  s(r, p) = c * arp - sn * arq;
  s(p, r) = s(r, p);
  s(r, q) = sn * arp + c * arq;
  s(q, r) = s(r, q);

  for (int i = 0; i < 3; ++i) {
    const double vip = v(i, p), viq = v(i, q);
    v(i, p) = c * vip - sn * viq;
    v(i, q) = sn * vip + c * viq;
  }
}

double off_diag_mass(const Mat3& s) {
  return s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) + s(1, 2) * s(1, 2);
}

}  // namespace

SymEigen eig_sym(const Mat3& sym) {
  Mat3 s = sym;
  // symmetrise; callers pass C = F^T F which is symmetric up to roundoff
  s(0, 1) = s(1, 0) = 0.5 * (s(0, 1) + s(1, 0));
  s(0, 2) = s(2, 0) = 0.5 * (s(0, 2) + s(2, 0));
  s(1, 2) = s(2, 1) = 0.5 * (s(1, 2) + s(2, 1));

  Mat3 v = Mat3::identity();
  const double scale = std::max(max_abs_entry(s), 1e-300);
  constexpr int kMaxSweeps = 50;
  int sweep = 0;
  while (off_diag_mass(s) > (1e-30 * scale * scale) && sweep < kMaxSweeps) {
    jacobi_rotate(s, v, 0, 1);
    jacobi_rotate(s, v, 0, 2);
    jacobi_rotate(s, v, 1, 2);
    ++sweep;
  }
  if (sweep == kMaxSweeps)
    fail(ErrorKind::NumericalFailure, "Jacobi eigensolve did not converge for " + to_string(sym));

  SymEigen out;
  std::array<int, 3> order = {0, 1, 2};
  const std::array<double, 3> d = {s(0, 0), s(1, 1), s(2, 2)};
  std::sort(order.begin(), order.end(), [&](int lhs, int rhs) { return d[static_cast<std::size_t>(lhs)] > d[static_cast<std::size_t>(rhs)]; });
  for (int k = 0; k < 3; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    out.values[static_cast<std::size_t>(k)] = d[static_cast<std::size_t>(src)];
    for (int i = 0; i < 3; ++i) out.vectors(i, k) = v(i, src);
  }
  return out;
}

}  // namespace softchar

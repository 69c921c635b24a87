#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace softchar::kernels {

/// Batch kernels for the data-parallel inner loops: incompressible-path
/// stress laws evaluated over whole grids, plus the reductions used by the
/// torsion quadrature and the NMSE objective.
///
/// The scalar implementations are the reference. SIMD variants are selected
/// at runtime and must agree with the reference within a few ULPs
/// (equivalence-tested in tests/test_kernels.cpp). The Ogden law needs
/// non-integer powers and stays on the scalar path in constitutive.cpp.
struct Ops {
  const char* name;

  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);

  void (*neo_hookean_uniaxial)(double mu, const double* stretch, double* out, std::size_t n);
  void (*neo_hookean_equibiaxial)(double mu, const double* stretch, double* out, std::size_t n);
  void (*neo_hookean_shear)(double mu, const double* gamma, double* out, std::size_t n);

  void (*yeoh_uniaxial)(double c1, double c2, double c3, const double* stretch, double* out,
                        std::size_t n);
  void (*yeoh_equibiaxial)(double c1, double c2, double c3, const double* stretch, double* out,
                           std::size_t n);
  void (*yeoh_shear)(double c1, double c2, double c3, const double* gamma, double* out,
                     std::size_t n);
};

const Ops& scalar_ops();

/// True when the AVX2 variant is compiled in and this CPU supports it.
bool avx2_available();
const Ops& avx2_ops();

/// Best supported implementation. The environment variable SOFTCHAR_KERNELS
/// ("scalar" or "avx2") forces a specific one; unsupported requests fall back
/// to scalar with a warning on stderr. Selected once per process.
const Ops& active();

std::vector<std::string> available_names();

}  // namespace softchar::kernels

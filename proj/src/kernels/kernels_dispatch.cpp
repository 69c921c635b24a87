#include <cstdlib>
#include <cstring>
#include <iostream>

#include "softchar/kernels.hpp"

namespace softchar::kernels {

bool avx2_available() {
#if defined(SOFTCHAR_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

#if !defined(SOFTCHAR_HAVE_AVX2)
const Ops& avx2_ops() { return scalar_ops(); }
#endif

namespace {

const Ops& select() {
  const char* req = std::getenv("SOFTCHAR_KERNELS");
  if (req != nullptr) {
    if (std::strcmp(req, "scalar") == 0) return scalar_ops();
    if (std::strcmp(req, "avx2") == 0) {
      if (avx2_available()) return avx2_ops();
      std::cerr << "softchar: SOFTCHAR_KERNELS=avx2 requested but AVX2 is unavailable; "
                   "using scalar kernels\n";
      return scalar_ops();
    }
    std::cerr << "softchar: unknown SOFTCHAR_KERNELS value '" << req
              << "' (expected scalar or avx2); auto-selecting\n";
  }
  return avx2_available() ? avx2_ops() : scalar_ops();
}

}  // namespace

const Ops& active() {
  static const Ops& ops = select();
  return ops;
}

std::vector<std::string> available_names() {
  std::vector<std::string> names = {"scalar"};
  if (avx2_available()) names.emplace_back("avx2");
  return names;
}

}  // namespace softchar::kernels

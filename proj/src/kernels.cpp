#include "switchsim/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace switchsim::kernels {
namespace {

Backend pick_default() {
  if (const char* env = std::getenv("SWITCHSIM_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_supported())
      return Backend::Avx2;
  }
  return avx2_supported() ? Backend::Avx2 : Backend::Scalar;
}

Backend& backend_slot() {
  static Backend b = pick_default();
  return b;
}

}  // namespace

bool avx2_supported() {
#if defined(SWITCHSIM_BUILD_AVX2) && (defined(__x86_64__) || defined(_M_X64))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

#if !defined(SWITCHSIM_BUILD_AVX2)
const Ops& avx2_ops() { return scalar_ops(); }
#endif

const Ops& active() {
  return backend_slot() == Backend::Avx2 ? avx2_ops() : scalar_ops();
}

void set_backend(Backend b) {
  backend_slot() = (b == Backend::Avx2 && avx2_supported()) ? Backend::Avx2
                                                            : Backend::Scalar;
}

Backend current_backend() { return backend_slot(); }

}  // namespace switchsim::kernels

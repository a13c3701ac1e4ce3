#include "avx2.hpp"
#include "lfdrkit/error.hpp"
#include "lfdrkit/simd/ops.hpp"

namespace lfdrkit::simd {

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

bool available(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if LFDRKIT_HAVE_AVX2_TU && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelOps& ops(Backend backend) {
  if (!available(backend))
    throw Error(ErrorCode::InvalidArgument,
                "SIMD backend '" + std::string(to_string(backend)) + "' is not available on this CPU");
#if LFDRKIT_HAVE_AVX2_TU
  if (backend == Backend::avx2) return avx2_ops();
#endif
  return scalar_ops();
}

const KernelOps& best() {
  static const KernelOps& table = available(Backend::avx2) ? ops(Backend::avx2) : scalar_ops();
  return table;
}

}  // namespace lfdrkit::simd

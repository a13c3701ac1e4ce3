#pragma once

#include "lfdrkit/simd/ops.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define LFDRKIT_HAVE_AVX2_TU 1
#else
#define LFDRKIT_HAVE_AVX2_TU 0
#endif

namespace lfdrkit::simd {

#if LFDRKIT_HAVE_AVX2_TU
const KernelOps& avx2_ops();
#endif

}  // namespace lfdrkit::simd

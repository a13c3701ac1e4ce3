#pragma once

// Closed forms of the supported kernels, shared by KernelSpec and the scalar
// SIMD backend so the reference path is the definition itself.

#include <cmath>
#include <numbers>

#include "lfdrkit/kernel.hpp"

namespace lfdrkit::detail {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;

inline double kernel_value(KernelFamily family, double u) {
  const double a = std::fabs(u);
  switch (family) {
    case KernelFamily::rectangular:
      return a <= 1.0 ? 0.5 : 0.0;
    case KernelFamily::triangular:
      return a < 1.0 ? 1.0 - a : 0.0;
    case KernelFamily::epanechnikov:
      return a < 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
    case KernelFamily::gaussian:
      return kInvSqrt2Pi * std::exp(-0.5 * u * u);
  }
  return 0.0;
}

}  // namespace lfdrkit::detail

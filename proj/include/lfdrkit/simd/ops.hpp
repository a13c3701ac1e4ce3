#pragma once

// Data-parallel inner loops shared by the estimators. Each backend provides
// the same table of function pointers; the scalar table is the reference
// implementation and the others are tested against it.

#include <cstddef>
#include <string_view>

#include "lfdrkit/kernel.hpp"

namespace lfdrkit::simd {

enum class Backend { scalar, avx2 };

std::string_view to_string(Backend backend);

struct KernelOps {
  Backend backend;

  /// sum_k a[k] * b[k]
  double (*dot)(const double* a, const double* b, std::size_t n);

  /// y[k] += alpha * x[k]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  /// sum_k a[k]
  double (*sum)(const double* a, std::size_t n);

  /// out[k] = exp(in[k]). Inputs below the double underflow threshold give 0.
  void (*exp)(const double* in, double* out, std::size_t n);

  /// out[k] = K((xs[k] - center) * inv_h)
  void (*kernel_row)(KernelFamily family, const double* xs, std::size_t n, double center,
                     double inv_h, double* out);

  /// sum_k w[k] * K((x - centers[k]) * inv_h); unit weights when w is null.
  double (*kernel_sum)(KernelFamily family, const double* centers, const double* weights,
                       std::size_t n, double x, double inv_h);
};

const KernelOps& scalar_ops();

/// Throws InvalidArgument when the backend was not compiled in or the CPU
/// lacks the instructions.
const KernelOps& ops(Backend backend);

bool available(Backend backend);

/// Widest backend the running CPU supports. Detected once.
const KernelOps& best();

}  // namespace lfdrkit::simd

#include <cmath>

#include "../kernel_forms.hpp"
#include "lfdrkit/simd/ops.hpp"

namespace lfdrkit::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

double sum_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k];
  return s;
}

void exp_scalar(const double* in, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = std::exp(in[k]);
}

void kernel_row_scalar(KernelFamily family, const double* xs, std::size_t n, double center,
                       double inv_h, double* out) {
  for (std::size_t k = 0; k < n; ++k) out[k] = detail::kernel_value(family, (xs[k] - center) * inv_h);
}

double kernel_sum_scalar(KernelFamily family, const double* centers, const double* weights,
                         std::size_t n, double x, double inv_h) {
  double s = 0.0;
  if (weights == nullptr) {
    for (std::size_t k = 0; k < n; ++k) s += detail::kernel_value(family, (x - centers[k]) * inv_h);
  } else {
    for (std::size_t k = 0; k < n; ++k)
      s += weights[k] * detail::kernel_value(family, (x - centers[k]) * inv_h);
  }
  return s;
}

}  // namespace

const KernelOps& scalar_ops() {
  static const KernelOps table{Backend::scalar,   dot_scalar,        axpy_scalar, sum_scalar,
                               exp_scalar,        kernel_row_scalar, kernel_sum_scalar};
  return table;
}

}  // namespace lfdrkit::simd

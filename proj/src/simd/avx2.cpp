// AVX2 + FMA backend. This translation unit is the only one compiled with
// -mavx2 -mfma; it is reached only through the dispatch table after a CPUID
// check, so the rest of the library stays baseline x86-64.

#include "avx2.hpp"

#if LFDRKIT_HAVE_AVX2_TU

#include <immintrin.h>

#include <cmath>

#include "../kernel_forms.hpp"

namespace lfdrkit::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Cephes-style exp: x = k ln2 + r with |r| <= ln2/2, then a (3,4) Pade form
// for e^r and an exponent-field scale by 2^k. Inputs below -708.39 (where the
// result would be subnormal) flush to 0.
inline __m256d exp_pd(__m256d x) {
  const __m256d hi_limit = _mm256_set1_pd(709.0);
  const __m256d lo_limit = _mm256_set1_pd(-708.39);
  const __m256d underflow = _mm256_cmp_pd(x, lo_limit, _CMP_LT_OQ);
  x = _mm256_min_pd(x, hi_limit);
  x = _mm256_max_pd(x, lo_limit);

  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125E-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212E-6);

  __m256d k = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, c1, x);
  r = _mm256_fnmadd_pd(k, c2, r);

  const __m256d rr = _mm256_mul_pd(r, r);
  __m256d p = _mm256_set1_pd(1.26177193074810590878E-4);
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, r);
  __m256d q = _mm256_set1_pd(3.00198505138664455042E-6);
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.00000000000000000009E0));
  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  const __m128i k32 = _mm256_cvtpd_epi32(k);
  __m256i bits = _mm256_cvtepi32_epi64(k32);
  bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
  bits = _mm256_slli_epi64(bits, 52);
  e = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));
  return _mm256_andnot_pd(underflow, e);
}

template <KernelFamily F>
inline __m256d kernel_pd(__m256d u) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d abs_u = _mm256_andnot_pd(_mm256_set1_pd(-0.0), u);
  if constexpr (F == KernelFamily::rectangular) {
    const __m256d inside = _mm256_cmp_pd(abs_u, one, _CMP_LE_OQ);
    return _mm256_and_pd(inside, _mm256_set1_pd(0.5));
  } else if constexpr (F == KernelFamily::triangular) {
    return _mm256_max_pd(_mm256_sub_pd(one, abs_u), _mm256_setzero_pd());
  } else if constexpr (F == KernelFamily::epanechnikov) {
    const __m256d inside = _mm256_cmp_pd(abs_u, one, _CMP_LT_OQ);
    const __m256d v = _mm256_mul_pd(_mm256_set1_pd(0.75), _mm256_fnmadd_pd(u, u, one));
    return _mm256_and_pd(inside, v);
  } else {
    const __m256d arg = _mm256_mul_pd(_mm256_set1_pd(-0.5), _mm256_mul_pd(u, u));
    return _mm256_mul_pd(_mm256_set1_pd(detail::kInvSqrt2Pi), exp_pd(arg));
  }
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
  }
  for (; k + 4 <= n; k += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4)
    _mm256_storeu_pd(y + k, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k)));
  for (; k < n; ++k) y[k] += alpha * x[k];
}

double sum_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + k));
  double s = hsum(acc);
  for (; k < n; ++k) s += a[k];
  return s;
}

void exp_avx2(const double* in, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) _mm256_storeu_pd(out + k, exp_pd(_mm256_loadu_pd(in + k)));
  if (k < n) {
    alignas(32) double buf[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = k; j < n; ++j) buf[j - k] = in[j];
    _mm256_store_pd(buf, exp_pd(_mm256_load_pd(buf)));
    for (std::size_t j = k; j < n; ++j) out[j] = buf[j - k];
  }
}

template <KernelFamily F>
void kernel_row_impl(const double* xs, std::size_t n, double center, double inv_h, double* out) {
  const __m256d vc = _mm256_set1_pd(center);
  const __m256d vh = _mm256_set1_pd(inv_h);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d u = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(xs + k), vc), vh);
    _mm256_storeu_pd(out + k, kernel_pd<F>(u));
  }
  if (k < n) {
    alignas(32) double buf[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = k; j < n; ++j) buf[j - k] = (xs[j] - center) * inv_h;
    _mm256_store_pd(buf, kernel_pd<F>(_mm256_load_pd(buf)));
    for (std::size_t j = k; j < n; ++j) out[j] = buf[j - k];
  }
}

template <KernelFamily F>
double kernel_sum_impl(const double* centers, const double* weights, std::size_t n, double x,
                       double inv_h) {
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d vh = _mm256_set1_pd(inv_h);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  if (weights == nullptr) {
    for (; k + 4 <= n; k += 4) {
      const __m256d u = _mm256_mul_pd(_mm256_sub_pd(vx, _mm256_loadu_pd(centers + k)), vh);
      acc = _mm256_add_pd(acc, kernel_pd<F>(u));
    }
  } else {
    for (; k + 4 <= n; k += 4) {
      const __m256d u = _mm256_mul_pd(_mm256_sub_pd(vx, _mm256_loadu_pd(centers + k)), vh);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(weights + k), kernel_pd<F>(u), acc);
    }
  }
  if (k < n) {
    alignas(32) double u_buf[4] = {0.0, 0.0, 0.0, 0.0};
    alignas(32) double w_buf[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = k; j < n; ++j) {
      u_buf[j - k] = (x - centers[j]) * inv_h;
      w_buf[j - k] = weights == nullptr ? 1.0 : weights[j];
    }
    acc = _mm256_fmadd_pd(_mm256_load_pd(w_buf), kernel_pd<F>(_mm256_load_pd(u_buf)), acc);
  }
  return hsum(acc);
}

void kernel_row_avx2(KernelFamily family, const double* xs, std::size_t n, double center,
                     double inv_h, double* out) {
  switch (family) {
    case KernelFamily::rectangular:
      return kernel_row_impl<KernelFamily::rectangular>(xs, n, center, inv_h, out);
    case KernelFamily::triangular:
      return kernel_row_impl<KernelFamily::triangular>(xs, n, center, inv_h, out);
    case KernelFamily::epanechnikov:
      return kernel_row_impl<KernelFamily::epanechnikov>(xs, n, center, inv_h, out);
    case KernelFamily::gaussian:
      return kernel_row_impl<KernelFamily::gaussian>(xs, n, center, inv_h, out);
  }
}

double kernel_sum_avx2(KernelFamily family, const double* centers, const double* weights,
                       std::size_t n, double x, double inv_h) {
  switch (family) {
    case KernelFamily::rectangular:
      return kernel_sum_impl<KernelFamily::rectangular>(centers, weights, n, x, inv_h);
    case KernelFamily::triangular:
      return kernel_sum_impl<KernelFamily::triangular>(centers, weights, n, x, inv_h);
    case KernelFamily::epanechnikov:
      return kernel_sum_impl<KernelFamily::epanechnikov>(centers, weights, n, x, inv_h);
    case KernelFamily::gaussian:
      return kernel_sum_impl<KernelFamily::gaussian>(centers, weights, n, x, inv_h);
  }
  return 0.0;
}

}  // namespace

const KernelOps& avx2_ops() {
  static const KernelOps table{Backend::avx2, dot_avx2,        axpy_avx2,      sum_avx2,
                               exp_avx2,      kernel_row_avx2, kernel_sum_avx2};
  return table;
}

}  // namespace lfdrkit::simd

#endif  // LFDRKIT_HAVE_AVX2_TU

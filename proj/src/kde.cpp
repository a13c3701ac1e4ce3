#include "lfdrkit/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lfdrkit/error.hpp"
#include "lfdrkit/simd/ops.hpp"

namespace lfdrkit {

namespace detail {

Window kernel_window(std::span<const double> sorted, double x, KernelSpec spec, Bandwidth h) {
  if (!spec.compact()) return {0, sorted.size()};
  // Slightly wider than the support; the kernel itself decides the edge.
  const double r = h.value() * (1.0 + 1e-9);
  const auto lo = std::lower_bound(sorted.begin(), sorted.end(), x - r);
  const auto hi = std::upper_bound(lo, sorted.end(), x + r);
  return {static_cast<std::size_t>(lo - sorted.begin()), static_cast<std::size_t>(hi - sorted.begin())};
}

}  // namespace detail

namespace {

double raw_kernel_sum(std::span<const double> sorted, KernelSpec spec, Bandwidth h, double x) {
  const auto w = detail::kernel_window(sorted, x, spec, h);
  return simd::best().kernel_sum(spec.family(), sorted.data() + w.begin, nullptr, w.end - w.begin, x,
                                 1.0 / h.value());
}

}  // namespace

double kde(const PValueSample& sample, KernelSpec spec, Bandwidth h, double x) {
  const double n = static_cast<double>(sample.size());
  return raw_kernel_sum(sample.sorted(), spec, h, x) / (n * h.value());
}

std::vector<double> kde(const PValueSample& sample, KernelSpec spec, Bandwidth h,
                        std::span<const double> xs) {
  std::vector<double> out(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) out[k] = kde(sample, spec, h, xs[k]);
  return out;
}

double loo_kde(const PValueSample& sample, KernelSpec spec, Bandwidth h, std::size_t i) {
  const std::size_t n = sample.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "leave-one-out estimate needs n >= 2");
  if (i >= n)
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(i) + " out of range for n = " + std::to_string(n));
  const auto sorted = sample.sorted();
  const double x = sample[i];
  const auto w = detail::kernel_window(sorted, x, spec, h);
  // Drop one copy of X_i: the sorted position of its first occurrence.
  const auto self = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
  const auto& ops = simd::best();
  const double inv_h = 1.0 / h.value();
  const double left = ops.kernel_sum(spec.family(), sorted.data() + w.begin, nullptr, self - w.begin, x, inv_h);
  const double right =
      ops.kernel_sum(spec.family(), sorted.data() + self + 1, nullptr, w.end - self - 1, x, inv_h);
  return (left + right) / (static_cast<double>(n - 1) * h.value());
}

std::vector<double> loo_kde_all(const PValueSample& sample, KernelSpec spec, Bandwidth h) {
  std::vector<double> out(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) out[i] = loo_kde(sample, spec, h, i);
  return out;
}

double sample_sd(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(ErrorCode::EmptyInput, "quantile of an empty sequence");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double silverman_rule(double sd, double iqr, std::size_t n) {
  const double spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0))
    throw Error(ErrorCode::DegenerateSample, "Silverman rule needs positive spread (sd and IQR/1.34)");
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

Bandwidth silverman_bandwidth(const PValueSample& sample) {
  if (sample.size() < 2) throw Error(ErrorCode::DegenerateSample, "Silverman rule needs n >= 2");
  const auto sorted = sample.sorted();
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  return Bandwidth(silverman_rule(sample_sd(sample.values()), iqr, sample.size()), BandwidthRule::silverman);
}

}  // namespace lfdrkit

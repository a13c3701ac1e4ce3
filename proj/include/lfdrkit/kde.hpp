#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lfdrkit/kernel.hpp"
#include "lfdrkit/sample.hpp"

namespace lfdrkit {

/// g_hat(x) = (1 / nh) sum_i K((x - X_i) / h). No boundary correction.
double kde(const PValueSample& sample, KernelSpec spec, Bandwidth h, double x);
std::vector<double> kde(const PValueSample& sample, KernelSpec spec, Bandwidth h,
                        std::span<const double> xs);

/// Leave-one-out estimate at X_i: (1 / (n-1)) sum_{j != i} K_{j,h}(X_i).
/// Requires n >= 2; throws IndexOutOfRange for i >= n.
double loo_kde(const PValueSample& sample, KernelSpec spec, Bandwidth h, std::size_t i);
std::vector<double> loo_kde_all(const PValueSample& sample, KernelSpec spec, Bandwidth h);

/// Sample standard deviation with the n-1 denominator.
double sample_sd(std::span<const double> values);
/// Quantile by linear interpolation between order statistics (type 7).
double quantile_sorted(std::span<const double> sorted, double p);

/// 0.9 * min(sd, iqr / 1.34) * n^(-1/5); throws DegenerateSample if the min is 0.
double silverman_rule(double sd, double iqr, std::size_t n);
Bandwidth silverman_bandwidth(const PValueSample& sample);

namespace detail {

struct Window {
  std::size_t begin;
  std::size_t end;
};

/// Index range of sorted centers that can contribute at x under the kernel.
Window kernel_window(std::span<const double> sorted, double x, KernelSpec spec, Bandwidth h);

}  // namespace detail

}  // namespace lfdrkit

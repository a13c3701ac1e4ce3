#pragma once

#include <string_view>

namespace lfdrkit {

enum class KernelFamily { rectangular, triangular, epanechnikov, gaussian };

std::string_view to_string(KernelFamily family);
KernelFamily parse_kernel_family(std::string_view name);

/// A symmetric probability kernel K with closed-form evaluation and
/// antiderivative. All supported families are second-order kernels.
class KernelSpec {
public:
  constexpr KernelSpec() = default;
  constexpr explicit KernelSpec(KernelFamily family) : family_(family) {}

  constexpr KernelFamily family() const { return family_; }
  /// First nonzero moment.
  constexpr int order() const { return 2; }
  constexpr bool compact() const { return family_ != KernelFamily::gaussian; }
  /// Half-width of the support; infinite for the gaussian.
  double support_radius() const;

  double operator()(double u) const;
  /// Integral of K over (-inf, u].
  double cdf(double u) const;

  friend constexpr bool operator==(KernelSpec, KernelSpec) = default;

private:
  KernelFamily family_ = KernelFamily::triangular;
};

double kernel_eval(KernelSpec spec, double u);

/// Integral of K over [a, b]; a may be -inf and b may be +inf.
double kernel_segment_integral(KernelSpec spec, double a, double b);

enum class BandwidthRule { silverman, fixed };

class Bandwidth {
public:
  /// Throws InvalidArgument unless value is finite and positive.
  Bandwidth(double value, BandwidthRule rule = BandwidthRule::fixed);

  double value() const { return value_; }
  BandwidthRule rule() const { return rule_; }

private:
  double value_;
  BandwidthRule rule_;
};

/// Mass of K_{c,h}(x) = K((x - c) / h) / h on [0, 1].
double unit_interval_mass(KernelSpec spec, Bandwidth h, double center);

/// K_h(x) = K(x / h) / h.
inline double scaled_kernel(KernelSpec spec, Bandwidth h, double x) {
  return spec(x / h.value()) / h.value();
}

}  // namespace lfdrkit

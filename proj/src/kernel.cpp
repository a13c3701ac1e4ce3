#include "lfdrkit/kernel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kernel_forms.hpp"
#include "lfdrkit/error.hpp"

namespace lfdrkit {

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::rectangular:
      return "rectangular";
    case KernelFamily::triangular:
      return "triangular";
    case KernelFamily::epanechnikov:
      return "epanechnikov";
    case KernelFamily::gaussian:
      return "gaussian";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  for (auto f : {KernelFamily::rectangular, KernelFamily::triangular, KernelFamily::epanechnikov,
                 KernelFamily::gaussian}) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown kernel '" + std::string(name) + "'");
}

double KernelSpec::support_radius() const {
  return compact() ? 1.0 : std::numeric_limits<double>::infinity();
}

double KernelSpec::operator()(double u) const { return detail::kernel_value(family_, u); }

double KernelSpec::cdf(double u) const {
  if (std::isnan(u)) return u;
  if (family_ == KernelFamily::gaussian) return 0.5 * std::erfc(-u / std::numbers::sqrt2);
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  switch (family_) {
    case KernelFamily::rectangular:
      return 0.5 * (u + 1.0);
    case KernelFamily::triangular:
      return u <= 0.0 ? 0.5 * (1.0 + u) * (1.0 + u) : 1.0 - 0.5 * (1.0 - u) * (1.0 - u);
    case KernelFamily::epanechnikov:
      return 0.25 * (2.0 + 3.0 * u - u * u * u);
    case KernelFamily::gaussian:
      break;
  }
  return 0.0;
}

double kernel_eval(KernelSpec spec, double u) { return spec(u); }

double kernel_segment_integral(KernelSpec spec, double a, double b) {
  if (!(a <= b))
    throw Error(ErrorCode::InvalidArgument, "segment integral requires a <= b");
  // Use the upper tail when both ends sit right of zero; the difference of two
  // CDF values near 1 loses all precision for the gaussian.
  if (a > 0.0) return spec.cdf(-a) - spec.cdf(-b);
  return spec.cdf(b) - spec.cdf(a);
}

double unit_interval_mass(KernelSpec spec, Bandwidth h, double center) {
  return kernel_segment_integral(spec, (0.0 - center) / h.value(), (1.0 - center) / h.value());
}

Bandwidth::Bandwidth(double value, BandwidthRule rule) : value_(value), rule_(rule) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw Error(ErrorCode::InvalidArgument, "bandwidth must be finite and positive, got " +
                                                std::to_string(value));
}

}  // namespace lfdrkit

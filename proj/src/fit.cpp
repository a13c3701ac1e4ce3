#include "lfdrkit/fit.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lfdrkit/error.hpp"
#include "lfdrkit/kde.hpp"
#include "lfdrkit/lfdr.hpp"
#include "lfdrkit/random.hpp"

namespace lfdrkit {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::naive:
      return "naive";
    case Method::rwk:
      return "rwk";
    case Method::kerfdr:
      return "kerfdr";
    case Method::msl:
      return "msl";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::naive, Method::rwk, Method::kerfdr, Method::msl})
    if (to_string(m) == name) return m;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

KernelSpec default_kernel(Method method) {
  return KernelSpec(method == Method::msl ? KernelFamily::gaussian : KernelFamily::triangular);
}

double evaluate(const FittedDensity& density, double x) {
  return std::visit([x](const auto& d) { return d(x); }, density);
}

std::vector<double> evaluate(const FittedDensity& density, std::span<const double> xs) {
  return std::visit([xs](const auto& d) { return d.evaluate(xs); }, density);
}

FitResult fit_with(const PValueSample& sample, Method method, const ThetaEstimate& theta, Bandwidth h,
                   KernelSpec kernel, const IterativeConfig& iterative) {
  const double t = theta.value;
  FitResult result{method, theta, h, kernel, std::nullopt, {}, {}, {}, {}, std::nullopt, t == 1.0};
  const std::size_t n = sample.size();

  if (method == Method::naive) {
    result.density = NaiveDensity(sample, t, kernel, h);
  } else if (!result.null_only) {
    if (method == Method::rwk) {
      auto tau = rwk_weights(sample, t, kernel, h);
      result.density = rwk_density(sample, tau, kernel, h);
      result.weights = std::move(tau.tau);
    } else {
      IterativeConfig config = iterative;
      config.rule = method == Method::msl ? UpdateRule::msl : UpdateRule::kerfdr;
      auto it = run_iterative(sample, t, kernel, h, config);
      result.density = std::move(it.density);
      result.weights = std::move(it.weights);
      result.trace = std::move(it.trace);
    }
  }

  if (result.density) {
    result.f_hat = evaluate(*result.density, sample.values());
  } else {
    result.f_hat.assign(n, std::numeric_limits<double>::quiet_NaN());
  }
  result.lfdr.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    result.lfdr[i] = result.null_only ? 1.0 : lfdr_estimate(t, result.f_hat[i]);
  result.fdr = fdr_in_input_order(sample.values(), result.lfdr);
  return result;
}

FitResult fit(const PValueSample& sample, const FitOptions& options) {
  ThetaEstimate theta{0.0, 0.0, ThetaMethod::user};
  if (options.theta) {
    if (!(*options.theta >= 0.0 && *options.theta <= 1.0))
      throw Error(ErrorCode::InvalidTheta, "theta must lie in [0, 1]");
    theta.value = *options.theta;
    theta.lambda = std::numeric_limits<double>::quiet_NaN();
  } else {
    theta = bootstrap_theta(sample, options.lambda_grid, options.bootstrap_replicates,
                            derive_seed(options.seed, {1}));
  }
  const Bandwidth h = options.bandwidth ? Bandwidth(*options.bandwidth, BandwidthRule::fixed)
                                        : silverman_bandwidth(sample);
  IterativeConfig config = options.iterative;
  config.init_seed = derive_seed(options.seed, {2});
  return fit_with(sample, options.method, theta, h, options.kernel.value_or(default_kernel(options.method)), config);
}

}  // namespace lfdrkit

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "lfdrkit/iterative.hpp"
#include "lfdrkit/kernel.hpp"
#include "lfdrkit/rwk.hpp"
#include "lfdrkit/sample.hpp"
#include "lfdrkit/theta.hpp"

namespace lfdrkit {

enum class Method { naive, rwk, kerfdr, msl };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

/// gaussian for msl, triangular otherwise.
KernelSpec default_kernel(Method method);

using FittedDensity = std::variant<NaiveDensity, WeightedKernelDensity>;

double evaluate(const FittedDensity& density, double x);
std::vector<double> evaluate(const FittedDensity& density, std::span<const double> xs);

struct FitOptions {
  Method method = Method::rwk;
  std::optional<KernelSpec> kernel;
  /// Fixed bandwidth; Silverman's rule when empty.
  std::optional<double> bandwidth;
  /// Fixed theta; Storey's bootstrap when empty.
  std::optional<double> theta;
  std::vector<double> lambda_grid = default_lambda_grid();
  int bootstrap_replicates = kDefaultBootstrapReplicates;
  /// Drives the bootstrap and the random initial weights.
  std::uint64_t seed = 0;
  /// Iteration settings for kerfdr and msl; `rule` and `init_seed` are set
  /// from `method` and `seed`.
  IterativeConfig iterative;
};

struct FitResult {
  Method method;
  ThetaEstimate theta;
  Bandwidth bandwidth;
  KernelSpec kernel;
  /// Empty when theta_hat = 1 and the method cannot form an estimate of f.
  std::optional<FittedDensity> density;
  /// tau_hat for rwk, final w for kerfdr and msl, empty for naive.
  std::vector<double> weights;
  /// Per observation, aligned with the input; NaN where f was not estimated.
  std::vector<double> f_hat;
  std::vector<double> lfdr;
  std::vector<double> fdr;
  std::optional<IterationTrace> trace;
  /// theta_hat = 1: every lFDR is 1.
  bool null_only = false;
};

/// Estimate theta (unless fixed), pick the bandwidth, fit f and derive lFDR
/// and cumulative FDR per observation.
FitResult fit(const PValueSample& sample, const FitOptions& options);

/// Same, with theta and bandwidth already decided. The benchmark uses this so
/// that every method in a replicate shares them.
FitResult fit_with(const PValueSample& sample, Method method, const ThetaEstimate& theta, Bandwidth h,
                   KernelSpec kernel, const IterativeConfig& iterative);

}  // namespace lfdrkit

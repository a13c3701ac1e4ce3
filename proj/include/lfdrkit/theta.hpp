#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lfdrkit/sample.hpp"

namespace lfdrkit {

enum class ThetaMethod { fixed_lambda, bootstrap, user };

/// Estimate of the null proportion. `lambda` is meaningful for the
/// Schweder-Spjotvoll estimators only.
struct ThetaEstimate {
  double value;
  double lambda;
  ThetaMethod method;
};

/// min(1, #{X_i > lambda} / (n (1 - lambda))). Throws InvalidLambda unless
/// lambda is in [0, 1).
ThetaEstimate theta_at_lambda(const PValueSample& sample, double lambda);

/// {0.05, 0.10, ..., 0.95}
std::vector<double> default_lambda_grid();

inline constexpr int kDefaultBootstrapReplicates = 100;

/// Storey's bootstrap choice of lambda: minimizes the bootstrap MSE of the
/// estimator against the smallest estimate over the grid on the original
/// sample. Ties go to the smallest lambda. Replicate b draws from its own
/// stream derived from (seed, b).
ThetaEstimate bootstrap_theta(const PValueSample& sample, std::span<const double> lambda_grid,
                              int replicates, std::uint64_t seed);

}  // namespace lfdrkit

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lfdrkit/grid.hpp"
#include "lfdrkit/kernel.hpp"
#include "lfdrkit/rwk.hpp"
#include "lfdrkit/sample.hpp"

namespace lfdrkit {

/// K_{c,h}(x) divided by its mass on [0, 1] (closed form). Throws ZeroMass if
/// that mass is zero.
double normalized_kernel_eval(double center, KernelSpec spec, Bandwidth h, double x);

enum class UpdateRule { kerfdr, msl };

std::string_view to_string(UpdateRule rule);

enum class WeightInit {
  uniform_random,  ///< w_i ~ U(0, 1), seeded by init_seed
  half,            ///< w_i = 1/2
  given,           ///< IterativeConfig::initial_weights
};

struct IterativeConfig {
  UpdateRule rule = UpdateRule::msl;
  double epsilon = 1e-5;
  int max_iterations = 500;
  /// Quadrature grid for the msl operators; unused by kerfdr.
  std::size_t grid_size = 1024;
  std::uint64_t init_seed = 0;
  WeightInit init = WeightInit::uniform_random;
  std::vector<double> initial_weights;
  /// Keep the weight vector of every iteration in the trace.
  bool record_weights = false;
  double density_floor = kDensityFloor;
};

/// Throws InvalidConfig on bad settings, including msl with a compact kernel.
void validate(const IterativeConfig& config, KernelSpec spec);

struct IterationRecord {
  int iteration;
  /// msl: smoothed log-likelihood l_n of f^(s). kerfdr: -(1/n) sum_i
  /// log(theta + (1 - theta) f^(s)(X_i)), which that rule does not minimise.
  double criterion;
  /// max_i |w_i^(s) - w_i^(s-1)| / w_i^(s-1)
  double max_relative_change;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  bool converged = false;
  int iterations_used = 0;
  /// Entry 0 holds the initial weights when record_weights is set.
  std::vector<std::vector<double>> weights;
};

struct IterativeFit {
  /// f_hat built from the final weights: plain kernels for kerfdr, kernels
  /// normalized on [0, 1] for msl.
  WeightedKernelDensity density;
  /// Final per-observation weights, aligned with the input sample.
  std::vector<double> weights;
  IterationTrace trace;
};

/// Fixed-theta iteration alternating f^(s) = sum_j w_j K~_j / sum_k w_k and
/// w_i = (1 - theta) F_i / (theta + (1 - theta) F_i), where F_i is f^(s)(X_i)
/// for kerfdr and N f^(s)(X_i) for msl. Stops once the max relative weight
/// change drops below epsilon (checked after every update, so at least one
/// update runs) or after max_iterations. Throws InvalidTheta unless
/// 0 < theta_hat < 1.
IterativeFit run_iterative(const PValueSample& sample, double theta_hat, KernelSpec spec, Bandwidth h,
                           const IterativeConfig& config);

/// One application of the rule's weight map to `weights`.
std::vector<double> apply_weight_map(const PValueSample& sample, double theta_hat, KernelSpec spec, Bandwidth h,
                                     const IterativeConfig& config, std::span<const double> weights);

/// The msl iterate f^(s) on the quadrature grid for the given weights.
GridFunction msl_grid_density(const PValueSample& sample, KernelSpec spec, Bandwidth h, std::size_t grid_size,
                              std::span<const double> weights);

}  // namespace lfdrkit

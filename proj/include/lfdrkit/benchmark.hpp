#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lfdrkit/fit.hpp"
#include "lfdrkit/simulation.hpp"

namespace lfdrkit {

struct BenchmarkConfig {
  /// Alternatives to simulate; each model's theta is replaced by every entry
  /// of `thetas`.
  std::vector<SimulationModel> models = {SimulationModel::standard(ModelKind::beta_tail, 0.65),
                                         SimulationModel::standard(ModelKind::gaussian_shift, 0.65),
                                         SimulationModel::standard(ModelKind::laplace_shift, 0.65)};
  std::vector<double> thetas = {0.65, 0.85};
  std::vector<std::size_t> sample_sizes = {500, 1000, 2000, 5000};
  int repeats = 100;
  std::vector<Method> methods = {Method::rwk, Method::kerfdr, Method::msl};
  std::uint64_t master_seed = 0;

  std::vector<double> lambda_grid = default_lambda_grid();
  int bootstrap_replicates = kDefaultBootstrapReplicates;
  /// Midpoint grid for RMISE.
  std::size_t metric_grid_size = 1024;
  /// epsilon, max_iterations and grid_size for kerfdr and msl.
  IterativeConfig iterative;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 1;
};

/// Throws InvalidConfig.
void validate(const BenchmarkConfig& config);

struct BenchmarkRow {
  SimulationModel model;
  std::size_t n;
  Method method;
  /// Means over successful replicates (NaN when none succeeded).
  double rmise;
  double rmse;
  double mean_theta_hat;
  double mean_iterations;
  int successes;
  int failures;
  double wall_seconds;
};

struct BenchmarkReport {
  BenchmarkConfig config;
  /// Ordered by model, theta, n, then method as listed in the config.
  std::vector<BenchmarkRow> rows;
};

/// Runs every (model, theta, n) cell for `repeats` replicates. Replicate r of
/// cell (m, t, k) uses seed derive_seed(master_seed, {m, t, k, r}); within it
/// the sample, the bootstrap and the initial weights take sub-streams 0, 1, 2.
/// A replicate that throws counts as a failure for the affected methods. The
/// report does not depend on the thread count (wall times aside).
BenchmarkReport run_benchmark(const BenchmarkConfig& config);

/// Columns: model,theta,n,method,rmise,rmse,mean_theta_hat,mean_iters,failures
void write_csv(std::ostream& out, const BenchmarkReport& report);
std::string to_json(const BenchmarkReport& report);
void print_summary(std::ostream& out, const BenchmarkReport& report);

/// %.17g, with "nan" / "inf" spelled out.
std::string format_number(double value);

}  // namespace lfdrkit

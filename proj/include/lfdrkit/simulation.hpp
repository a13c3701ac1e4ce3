#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "lfdrkit/fit.hpp"

namespace lfdrkit {

enum class ModelKind {
  beta_tail,       ///< model 1: f(x) = rho (1 - x)^(rho - 1)
  gaussian_shift,  ///< model 2: T ~ N(mu, 1) under the alternative, p = 1 - Phi(T)
  laplace_shift,   ///< model 3: T ~ Laplace(mu, 1) under the alternative, p = upper Laplace tail
};

std::string_view to_string(ModelKind kind);
/// 1, 2 or 3.
int model_number(ModelKind kind);
ModelKind model_from_number(int number);

struct SimulationModel {
  ModelKind kind = ModelKind::beta_tail;
  double theta = 0.65;
  double rho = 4.0;
  double mu = 2.0;

  /// Defaults rho = 4 (model 1), mu = 2 (model 2), mu = 1 (model 3).
  static SimulationModel standard(ModelKind kind, double theta);
};

/// Throws InvalidArgument unless theta in [0, 1], rho > 0 and mu finite.
void validate(const SimulationModel& model);

struct SimulatedSample {
  std::vector<double> p_values;
  /// Latent labels: 0 for a true null, 1 for an alternative.
  std::vector<int> labels;
};

SimulatedSample generate_sample(const SimulationModel& model, std::size_t n, std::uint64_t seed);

/// Alternative density of the p-values. Throws DomainError at x = 0 or 1 for
/// models 2 and 3, and outside [0, 1] for every model.
double true_f(const SimulationModel& model, double x);
double true_lfdr(const SimulationModel& model, double x);

/// sqrt(int_0^1 (f_hat - f)^2) by the midpoint rule on grid_size points.
double rmise(const std::function<double(double)>& f_hat, const SimulationModel& model, std::size_t grid_size);
double rmise(const FittedDensity& f_hat, const SimulationModel& model, std::size_t grid_size);

/// sqrt(mean_i (a_i - b_i)^2); throws LengthMismatch or EmptyInput.
double rmse_lfdr(std::span<const double> lfdr_hat, std::span<const double> lfdr_true);

}  // namespace lfdrkit

#pragma once

#include <span>
#include <vector>

#include "lfdrkit/kernel.hpp"
#include "lfdrkit/sample.hpp"

namespace lfdrkit {

/// f_hat(x) = sum_i w_i K_{i,h}(x), with K_{i,h} either the plain scaled
/// kernel centred at c_i or, when `normalized`, that kernel divided by its
/// mass on [0, 1]. Weights are non-negative and sum to 1.
class WeightedKernelDensity {
public:
  /// Throws LengthMismatch, InvalidArgument (empty, negative weight, weights
  /// not summing to 1 within 1e-12) or ZeroMass (normalized mode, a kernel
  /// without mass on [0, 1]).
  WeightedKernelDensity(std::vector<double> centers, std::vector<double> weights, KernelSpec spec,
                        Bandwidth h, bool normalized);

  /// Divides the raw weights by their sum first; throws DegenerateWeights when
  /// the sum is not positive.
  static WeightedKernelDensity from_raw_weights(std::vector<double> centers, std::span<const double> raw,
                                                KernelSpec spec, Bandwidth h, bool normalized);

  double operator()(double x) const;
  std::vector<double> evaluate(std::span<const double> xs) const;

  std::span<const double> centers() const { return centers_; }
  std::span<const double> weights() const { return weights_; }
  KernelSpec kernel() const { return spec_; }
  Bandwidth bandwidth() const { return h_; }
  bool normalized() const { return normalized_; }

private:
  std::vector<double> centers_;
  std::vector<double> weights_;
  KernelSpec spec_;
  Bandwidth h_;
  bool normalized_;
  // Centers sorted ascending with coefficient w_i / (h * mass_i) alongside.
  std::vector<double> sorted_centers_;
  std::vector<double> sorted_coef_;
};

struct PosteriorWeights {
  std::vector<double> tau;
};

/// tau_i = clamp(1 - theta_hat / g_loo(X_i), 0, 1) with the leave-one-out
/// kernel estimate of g. Throws DegenerateWeights when g_loo vanishes at every
/// observation (and theta_hat > 0).
PosteriorWeights rwk_weights(const PValueSample& sample, double theta_hat, KernelSpec spec, Bandwidth h);

/// Mixture of plain kernels at the observations with weights tau_i / sum tau.
WeightedKernelDensity rwk_density(const PValueSample& sample, const PosteriorWeights& tau, KernelSpec spec,
                                  Bandwidth h);

/// max(0, (g_hat(x) - theta_hat) / (1 - theta_hat)), and 0 when theta_hat = 1.
double naive_density(const PValueSample& sample, double theta_hat, KernelSpec spec, Bandwidth h, double x);

/// The naive estimator as a value that can be evaluated anywhere.
class NaiveDensity {
public:
  NaiveDensity(PValueSample sample, double theta_hat, KernelSpec spec, Bandwidth h);

  double operator()(double x) const;
  std::vector<double> evaluate(std::span<const double> xs) const;

private:
  PValueSample sample_;
  double theta_;
  KernelSpec spec_;
  Bandwidth h_;
};

}  // namespace lfdrkit

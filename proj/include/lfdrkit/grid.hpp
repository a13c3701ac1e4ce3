#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lfdrkit/kernel.hpp"
#include "lfdrkit/sample.hpp"

namespace lfdrkit {

/// A function on [0, 1] sampled at the midpoints x_j = (j + 1/2) / G.
/// Integrals use the midpoint rule on the same points.
class GridFunction {
public:
  /// Throws InvalidArgument if fewer than 2 values or any value is not finite.
  explicit GridFunction(std::vector<double> values);

  static GridFunction sample(std::size_t grid_size, const std::function<double(double)>& fn);
  static GridFunction constant(std::size_t grid_size, double value);
  static std::vector<double> points(std::size_t grid_size);

  std::size_t size() const { return values_.size(); }
  double step() const { return 1.0 / static_cast<double>(values_.size()); }
  double point(std::size_t j) const { return (static_cast<double>(j) + 0.5) * step(); }
  double operator[](std::size_t j) const { return values_[j]; }
  std::span<const double> values() const { return values_; }

  double integral() const;
  /// Linear interpolation between grid points; constant beyond the outer
  /// midpoints.
  double interpolate(double x) const;

private:
  std::vector<double> values_;
};

/// Midpoint-rule inner product on [0, 1].
double inner_product(const GridFunction& a, const GridFunction& b);

/// S f(x) = int_0^1 K_h(u - x) f(u) / m(u) du with m(u) = int_0^1 K_h(s - u) ds.
/// The masses m(u_k) are midpoint sums over the same grid, so S maps grid
/// densities to grid densities exactly.
GridFunction smooth_S(const GridFunction& f, KernelSpec spec, Bandwidth h);

/// S* phi(x) = int_0^1 K_h(u - x) phi(u) du / int_0^1 K_h(s - x) ds on the grid.
GridFunction adjoint_S_star(const GridFunction& phi, KernelSpec spec, Bandwidth h);
/// S* phi evaluated at arbitrary points with the same quadrature. Throws
/// ZeroMass when a compact kernel reaches no grid point.
std::vector<double> adjoint_S_star_at(const GridFunction& phi, KernelSpec spec, Bandwidth h,
                                      std::span<const double> xs);

inline constexpr double kDensityFloor = 1e-12;

/// N f = exp(S*(log f)). Values are floored at `floor` before the log; with
/// floor = 0 a non-positive value throws NonPositiveDensity.
GridFunction nonlinear_N(const GridFunction& f, KernelSpec spec, Bandwidth h, double floor = kDensityFloor);
std::vector<double> nonlinear_N_at(const GridFunction& f, KernelSpec spec, Bandwidth h,
                                   std::span<const double> xs, double floor = kDensityFloor);

/// l_n(theta, f) = -(1/n) sum_i log(theta + (1 - theta) N f(X_i)), with N f
/// computed at each X_i by the grid quadrature.
double smoothed_loglik(const PValueSample& sample, double theta, const GridFunction& f, KernelSpec spec,
                       Bandwidth h, double floor = kDensityFloor);

/// D(a | b) = int_0^1 { a log(a / b) + b - a }, with 0 log 0 = 0.
double kl_divergence(const GridFunction& a, const GridFunction& b);

}  // namespace lfdrkit

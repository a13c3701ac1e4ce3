#include "lfdrkit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lfdrkit/error.hpp"
#include "lfdrkit/simd/ops.hpp"

namespace lfdrkit {

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw Error(ErrorCode::InvalidArgument, "grid function needs at least 2 points");
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "grid function values must be finite");
}

GridFunction GridFunction::sample(std::size_t grid_size, const std::function<double(double)>& fn) {
  std::vector<double> v(grid_size);
  const double dx = 1.0 / static_cast<double>(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) v[j] = fn((static_cast<double>(j) + 0.5) * dx);
  return GridFunction(std::move(v));
}

GridFunction GridFunction::constant(std::size_t grid_size, double value) {
  return GridFunction(std::vector<double>(grid_size, value));
}

std::vector<double> GridFunction::points(std::size_t grid_size) {
  std::vector<double> x(grid_size);
  const double dx = 1.0 / static_cast<double>(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) x[j] = (static_cast<double>(j) + 0.5) * dx;
  return x;
}

double GridFunction::integral() const {
  return simd::best().sum(values_.data(), values_.size()) * step();
}

double GridFunction::interpolate(double x) const {
  const double pos = x * static_cast<double>(values_.size()) - 0.5;
  if (pos <= 0.0) return values_.front();
  const auto last = static_cast<double>(values_.size() - 1);
  if (pos >= last) return values_.back();
  const auto j = static_cast<std::size_t>(pos);
  const double t = pos - static_cast<double>(j);
  return (1.0 - t) * values_[j] + t * values_[j + 1];
}

double inner_product(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "grid sizes differ");
  return simd::best().dot(a.values().data(), b.values().data(), a.size()) * a.step();
}

GridFunction smooth_S(const GridFunction& f, KernelSpec spec, Bandwidth h) {
  const std::size_t G = f.size();
  const auto x = GridFunction::points(G);
  const auto& ops = simd::best();
  const double inv_h = 1.0 / h.value();
  std::vector<double> row(G);
  std::vector<double> out(G, 0.0);
  // Column k: K_h(x_j - u_k) f(u_k) du / m(u_k). The step and the 1/h factor
  // cancel between numerator and m(u_k).
  for (std::size_t k = 0; k < G; ++k) {
    if (f[k] < 0.0) throw Error(ErrorCode::InvalidArgument, "S expects a non-negative function");
    ops.kernel_row(spec.family(), x.data(), G, x[k], inv_h, row.data());
    const double mass = ops.sum(row.data(), G) * f.step();
    ops.axpy(f[k] * f.step() / mass, row.data(), out.data(), G);
  }
  return GridFunction(std::move(out));
}

std::vector<double> adjoint_S_star_at(const GridFunction& phi, KernelSpec spec, Bandwidth h,
                                      std::span<const double> xs) {
  const std::size_t G = phi.size();
  const auto u = GridFunction::points(G);
  const auto& ops = simd::best();
  std::vector<double> row(G);
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ops.kernel_row(spec.family(), u.data(), G, xs[i], 1.0 / h.value(), row.data());
    const double mass = ops.sum(row.data(), G);
    if (!(mass > 0.0))
      throw Error(ErrorCode::ZeroMass, "kernel at " + std::to_string(xs[i]) + " reaches no grid point");
    out[i] = ops.dot(row.data(), phi.values().data(), G) / mass;
  }
  return out;
}

GridFunction adjoint_S_star(const GridFunction& phi, KernelSpec spec, Bandwidth h) {
  return GridFunction(adjoint_S_star_at(phi, spec, h, GridFunction::points(phi.size())));
}

namespace {

GridFunction log_of(const GridFunction& f, double floor) {
  std::vector<double> v(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double y = std::max(f[j], floor);
    if (!(y > 0.0))
      throw Error(ErrorCode::NonPositiveDensity, "non-positive density value at grid point " + std::to_string(j));
    v[j] = std::log(y);
  }
  return GridFunction(std::move(v));
}

}  // namespace

std::vector<double> nonlinear_N_at(const GridFunction& f, KernelSpec spec, Bandwidth h,
                                   std::span<const double> xs, double floor) {
  auto s = adjoint_S_star_at(log_of(f, floor), spec, h, xs);
  for (double& v : s) v = std::exp(v);
  return s;
}

GridFunction nonlinear_N(const GridFunction& f, KernelSpec spec, Bandwidth h, double floor) {
  return GridFunction(nonlinear_N_at(f, spec, h, GridFunction::points(f.size()), floor));
}

double smoothed_loglik(const PValueSample& sample, double theta, const GridFunction& f, KernelSpec spec,
                       Bandwidth h, double floor) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw Error(ErrorCode::InvalidTheta, "theta must lie in [0, 1]");
  const auto nf = nonlinear_N_at(f, spec, h, sample.values(), floor);
  double acc = 0.0;
  for (double v : nf) acc += std::log(theta + (1.0 - theta) * v);
  return -acc / static_cast<double>(nf.size());
}

double kl_divergence(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "grid sizes differ");
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!(b[j] > 0.0)) throw Error(ErrorCode::NonPositiveDensity, "D(a|b) requires b > 0");
    if (a[j] < 0.0) throw Error(ErrorCode::InvalidArgument, "D(a|b) requires a >= 0");
    acc += (a[j] > 0.0 ? a[j] * std::log(a[j] / b[j]) : 0.0) + b[j] - a[j];
  }
  return acc * a.step();
}

}  // namespace lfdrkit

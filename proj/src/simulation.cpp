#include "lfdrkit/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lfdrkit/error.hpp"
#include "lfdrkit/grid.hpp"
#include "lfdrkit/random.hpp"
#include "lfdrkit/special.hpp"

namespace lfdrkit {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::beta_tail:
      return "beta_tail";
    case ModelKind::gaussian_shift:
      return "gaussian_shift";
    case ModelKind::laplace_shift:
      return "laplace_shift";
  }
  return "unknown";
}

int model_number(ModelKind kind) {
  switch (kind) {
    case ModelKind::beta_tail:
      return 1;
    case ModelKind::gaussian_shift:
      return 2;
    case ModelKind::laplace_shift:
      return 3;
  }
  return 0;
}

ModelKind model_from_number(int number) {
  switch (number) {
    case 1:
      return ModelKind::beta_tail;
    case 2:
      return ModelKind::gaussian_shift;
    case 3:
      return ModelKind::laplace_shift;
    default:
      throw Error(ErrorCode::InvalidArgument, "model must be 1, 2 or 3, got " + std::to_string(number));
  }
}

SimulationModel SimulationModel::standard(ModelKind kind, double theta) {
  SimulationModel m;
  m.kind = kind;
  m.theta = theta;
  m.rho = 4.0;
  m.mu = kind == ModelKind::laplace_shift ? 1.0 : 2.0;
  return m;
}

void validate(const SimulationModel& model) {
  if (!(model.theta >= 0.0 && model.theta <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "theta must lie in [0, 1]");
  if (!(model.rho > 0.0) || !std::isfinite(model.rho)) throw Error(ErrorCode::InvalidArgument, "rho must be positive");
  if (!std::isfinite(model.mu)) throw Error(ErrorCode::InvalidArgument, "mu must be finite");
}

namespace {

double draw_alternative(const SimulationModel& model, Rng& rng) {
  const double u = rng.uniform();
  switch (model.kind) {
    case ModelKind::beta_tail:
      // Inverse of F(x) = 1 - (1 - x)^rho.
      return -std::expm1(std::log1p(-u) / model.rho);
    case ModelKind::gaussian_shift:
      return normal_sf(model.mu + normal_quantile(u));
    case ModelKind::laplace_shift: {
      const double t = u < 0.5 ? model.mu + std::log(2.0 * u) : model.mu - std::log(2.0 * (1.0 - u));
      return laplace_sf(t);
    }
  }
  return 0.0;
}

}  // namespace

SimulatedSample generate_sample(const SimulationModel& model, std::size_t n, std::uint64_t seed) {
  validate(model);
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample size must be at least 1");
  Rng rng(seed);
  SimulatedSample out;
  out.p_values.resize(n);
  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform() < model.theta) {
      out.p_values[i] = rng.uniform();
      out.labels[i] = 0;
    } else {
      out.p_values[i] = draw_alternative(model, rng);
      out.labels[i] = 1;
    }
  }
  return out;
}

double true_f(const SimulationModel& model, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::DomainError, "x must lie in [0, 1]");
  switch (model.kind) {
    case ModelKind::beta_tail:
      return model.rho * std::pow(1.0 - x, model.rho - 1.0);
    case ModelKind::gaussian_shift: {
      if (x == 0.0 || x == 1.0) throw Error(ErrorCode::DomainError, "model 2 density is undefined at 0 and 1");
      // z = Phi^{-1}(1 - x); phi(z - mu) / phi(z) = exp(mu z - mu^2 / 2).
      const double z = -normal_quantile(x);
      return std::exp(model.mu * z - 0.5 * model.mu * model.mu);
    }
    case ModelKind::laplace_shift: {
      if (x == 0.0 || x == 1.0) throw Error(ErrorCode::DomainError, "model 3 density is undefined at 0 and 1");
      // |t| - |t - mu| written as a clamp, so the flat tails are exact.
      const double t = laplace_sf_inverse(x);
      const double mu = model.mu;
      const double e = mu >= 0.0 ? std::clamp(2.0 * t - mu, -mu, mu) : std::clamp(mu - 2.0 * t, mu, -mu);
      return std::exp(e);
    }
  }
  return 0.0;
}

double true_lfdr(const SimulationModel& model, double x) {
  const double f = true_f(model, x);
  return model.theta / (model.theta + (1.0 - model.theta) * f);
}

namespace {

double rmise_from_values(std::span<const double> f_hat, const SimulationModel& model) {
  const std::size_t g = f_hat.size();
  const double dx = 1.0 / static_cast<double>(g);
  double acc = 0.0;
  for (std::size_t j = 0; j < g; ++j) {
    const double d = f_hat[j] - true_f(model, (static_cast<double>(j) + 0.5) * dx);
    acc += d * d;
  }
  return std::sqrt(acc * dx);
}

}  // namespace

double rmise(const std::function<double(double)>& f_hat, const SimulationModel& model, std::size_t grid_size) {
  if (grid_size < 2) throw Error(ErrorCode::InvalidArgument, "grid_size must be at least 2");
  const auto x = GridFunction::points(grid_size);
  std::vector<double> v(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) v[j] = f_hat(x[j]);
  return rmise_from_values(v, model);
}

double rmise(const FittedDensity& f_hat, const SimulationModel& model, std::size_t grid_size) {
  if (grid_size < 2) throw Error(ErrorCode::InvalidArgument, "grid_size must be at least 2");
  return rmise_from_values(evaluate(f_hat, GridFunction::points(grid_size)), model);
}

double rmse_lfdr(std::span<const double> lfdr_hat, std::span<const double> lfdr_true) {
  if (lfdr_hat.size() != lfdr_true.size()) throw Error(ErrorCode::LengthMismatch, "sequences differ in length");
  if (lfdr_hat.empty()) throw Error(ErrorCode::EmptyInput, "no values");
  double acc = 0.0;
  for (std::size_t i = 0; i < lfdr_hat.size(); ++i) {
    const double d = lfdr_hat[i] - lfdr_true[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(lfdr_hat.size()));
}

}  // namespace lfdrkit

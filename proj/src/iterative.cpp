#include "lfdrkit/iterative.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lfdrkit/error.hpp"
#include "lfdrkit/kde.hpp"
#include "lfdrkit/random.hpp"
#include "lfdrkit/simd/ops.hpp"

namespace lfdrkit {

double normalized_kernel_eval(double center, KernelSpec spec, Bandwidth h, double x) {
  const double mass = unit_interval_mass(spec, h, center);
  if (!(mass > 0.0))
    throw Error(ErrorCode::ZeroMass, "kernel centred at " + std::to_string(center) + " has no mass on [0, 1]");
  return scaled_kernel(spec, h, x - center) / mass;
}

std::string_view to_string(UpdateRule rule) {
  return rule == UpdateRule::kerfdr ? "kerfdr" : "msl";
}

void validate(const IterativeConfig& config, KernelSpec spec) {
  if (!(config.epsilon > 0.0)) throw Error(ErrorCode::InvalidConfig, "epsilon must be positive");
  if (config.max_iterations < 1) throw Error(ErrorCode::InvalidConfig, "max_iterations must be at least 1");
  if (config.rule == UpdateRule::msl) {
    if (spec.compact())
      throw Error(ErrorCode::InvalidConfig,
                  "msl needs a strictly positive kernel (gaussian), got " + std::string(to_string(spec.family())));
    if (config.grid_size < 2) throw Error(ErrorCode::InvalidConfig, "grid_size must be at least 2");
  }
  if (!(config.density_floor >= 0.0)) throw Error(ErrorCode::InvalidConfig, "density_floor must be non-negative");
}

namespace {

inline double posterior(double theta, double f) {
  const double a = (1.0 - theta) * f;
  return a / (theta + a);
}

std::vector<double> initial_weights(const IterativeConfig& config, std::size_t n) {
  std::vector<double> w(n);
  switch (config.init) {
    case WeightInit::uniform_random: {
      Rng rng(config.init_seed);
      for (double& v : w) v = rng.uniform();
      break;
    }
    case WeightInit::half:
      std::fill(w.begin(), w.end(), 0.5);
      break;
    case WeightInit::given:
      if (config.initial_weights.size() != n)
        throw Error(ErrorCode::LengthMismatch, "initial_weights must have one entry per observation");
      for (double v : config.initial_weights)
        if (!(v > 0.0 && v <= 1.0)) throw Error(ErrorCode::InvalidConfig, "initial weights must lie in (0, 1]");
      w = config.initial_weights;
      break;
  }
  return w;
}

double max_relative_change(std::span<const double> now, std::span<const double> before) {
  double worst = 0.0;
  for (std::size_t i = 0; i < now.size(); ++i)
    worst = std::max(worst, std::fabs(now[i] - before[i]) / std::max(before[i], 1e-300));
  return worst;
}

/// Row i holds a_ij = K_h(u_j - X_i) / sum_j' K_h(u_j' - X_i) on the midpoint
/// grid. The same matrix gives f^(s) on the grid (columns, divided by W du)
/// and S*(log f)(X_i) (rows). Using one discretisation for both sides is what
/// makes the discrete iteration an exact descent for l_n.
class MslSystem {
public:
  MslSystem(std::span<const double> x, KernelSpec spec, Bandwidth h, std::size_t grid_size)
      : n_(x.size()), g_(grid_size), rows_(x.size() * grid_size), ops_(simd::best()) {
    const auto u = GridFunction::points(g_);
    for (std::size_t i = 0; i < n_; ++i) {
      double* row = rows_.data() + i * g_;
      ops_.kernel_row(spec.family(), u.data(), g_, x[i], 1.0 / h.value(), row);
      const double mass = ops_.sum(row, g_);
      if (!(mass > 0.0))
        throw Error(ErrorCode::ZeroMass, "kernel at " + std::to_string(x[i]) + " reaches no grid point");
      const double inv = 1.0 / mass;
      for (std::size_t j = 0; j < g_; ++j) row[j] *= inv;
    }
  }

  std::size_t grid_size() const { return g_; }

  /// f_j = sum_i w_i a_ij / (W du)
  std::vector<double> density(std::span<const double> w) const {
    std::vector<double> f(g_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) ops_.axpy(w[i], rows_.data() + i * g_, f.data(), g_);
    scale_to_density(f, w);
    return f;
  }

  /// One fused sweep over the rows: N f(X_i) from log f, the new weight w_i,
  /// and its contribution to the next grid density. Returns l_n(f).
  double sweep(std::span<const double> log_f, double theta, std::span<double> w_new, std::vector<double>& f_next) const {
    std::fill(f_next.begin(), f_next.end(), 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double* row = rows_.data() + i * g_;
      const double nf = std::exp(ops_.dot(row, log_f.data(), g_));
      acc += std::log(theta + (1.0 - theta) * nf);
      w_new[i] = posterior(theta, nf);
      ops_.axpy(w_new[i], row, f_next.data(), g_);
    }
    scale_to_density(f_next, w_new);
    return -acc / static_cast<double>(n_);
  }

private:
  void scale_to_density(std::vector<double>& f, std::span<const double> w) const {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(total > 0.0)) throw Error(ErrorCode::DegenerateWeights, "weights sum to zero");
    const double scale = static_cast<double>(g_) / total;
    for (double& v : f) v *= scale;
  }

  std::size_t n_;
  std::size_t g_;
  std::vector<double> rows_;
  const simd::KernelOps& ops_;
};

void log_floored(std::span<const double> f, double floor, std::vector<double>& out) {
  out.resize(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double y = std::max(f[j], floor);
    if (!(y > 0.0))
      throw Error(ErrorCode::NonPositiveDensity, "non-positive density value at grid point " + std::to_string(j));
    out[j] = std::log(y);
  }
}

/// kerfdr evaluates f^(s) at the observations only; work in sorted order so
/// compact kernels sum over a window.
class KerfdrSystem {
public:
  KerfdrSystem(const PValueSample& sample, KernelSpec spec, Bandwidth h)
      : spec_(spec), h_(h), order_(sample.size()), x_(sample.size()), windows_(sample.size()) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    const auto v = sample.values();
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    for (std::size_t k = 0; k < order_.size(); ++k) x_[k] = v[order_[k]];
    for (std::size_t k = 0; k < x_.size(); ++k) windows_[k] = detail::kernel_window(x_, x_[k], spec_, h_);
  }

  /// f(X_i) = sum_j w_j K_{j,h}(X_i) / W, weights and output in input order.
  std::vector<double> density_at_points(std::span<const double> w) const {
    const std::size_t n = x_.size();
    std::vector<double> ws(n);
    for (std::size_t k = 0; k < n; ++k) ws[k] = w[order_[k]];
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(total > 0.0)) throw Error(ErrorCode::DegenerateWeights, "weights sum to zero");
    const auto& ops = simd::best();
    const double inv_h = 1.0 / h_.value();
    const double scale = 1.0 / (total * h_.value());
    std::vector<double> f(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto win = windows_[k];
      f[order_[k]] = scale * ops.kernel_sum(spec_.family(), x_.data() + win.begin, ws.data() + win.begin,
                                            win.end - win.begin, x_[k], inv_h);
    }
    return f;
  }

private:
  KernelSpec spec_;
  Bandwidth h_;
  std::vector<std::size_t> order_;
  std::vector<double> x_;
  std::vector<detail::Window> windows_;
};

void check_inputs(const PValueSample& sample, double theta_hat, KernelSpec spec, const IterativeConfig& config) {
  validate(config, spec);
  if (!(theta_hat > 0.0 && theta_hat < 1.0))
    throw Error(ErrorCode::InvalidTheta, "iterative estimators need 0 < theta_hat < 1, got " + std::to_string(theta_hat));
  if (sample.size() < 2) throw Error(ErrorCode::InvalidArgument, "iterative estimators need n >= 2");
}

IterativeFit finish(const PValueSample& sample, KernelSpec spec, Bandwidth h, const IterativeConfig& config,
                    std::vector<double> w, IterationTrace trace) {
  const auto v = sample.values();
  auto density = WeightedKernelDensity::from_raw_weights(std::vector<double>(v.begin(), v.end()), w, spec, h,
                                                         config.rule == UpdateRule::msl);
  return IterativeFit{std::move(density), std::move(w), std::move(trace)};
}

IterativeFit run_msl(const PValueSample& sample, double theta, KernelSpec spec, Bandwidth h,
                     const IterativeConfig& config) {
  const MslSystem system(sample.values(), spec, h, config.grid_size);
  const std::size_t n = sample.size();
  std::vector<double> w = initial_weights(config, n);
  std::vector<double> w_new(n);
  std::vector<double> f = system.density(w);
  std::vector<double> f_next(config.grid_size);
  std::vector<double> log_f;

  IterationTrace trace;
  if (config.record_weights) trace.weights.push_back(w);
  for (int s = 1; s <= config.max_iterations; ++s) {
    log_floored(f, config.density_floor, log_f);
    const double criterion = system.sweep(log_f, theta, w_new, f_next);
    const double change = max_relative_change(w_new, w);
    trace.records.push_back({s, criterion, change});
    trace.iterations_used = s;
    w.swap(w_new);
    f.swap(f_next);
    if (config.record_weights) trace.weights.push_back(w);
    if (change < config.epsilon) {
      trace.converged = true;
      break;
    }
  }
  return finish(sample, spec, h, config, std::move(w), std::move(trace));
}

IterativeFit run_kerfdr(const PValueSample& sample, double theta, KernelSpec spec, Bandwidth h,
                        const IterativeConfig& config) {
  const KerfdrSystem system(sample, spec, h);
  const std::size_t n = sample.size();
  std::vector<double> w = initial_weights(config, n);
  std::vector<double> w_new(n);

  IterationTrace trace;
  if (config.record_weights) trace.weights.push_back(w);
  for (int s = 1; s <= config.max_iterations; ++s) {
    const auto f = system.density_at_points(w);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += std::log(theta + (1.0 - theta) * f[i]);
      w_new[i] = posterior(theta, f[i]);
    }
    const double change = max_relative_change(w_new, w);
    trace.records.push_back({s, -acc / static_cast<double>(n), change});
    trace.iterations_used = s;
    w.swap(w_new);
    if (config.record_weights) trace.weights.push_back(w);
    if (change < config.epsilon) {
      trace.converged = true;
      break;
    }
  }
  return finish(sample, spec, h, config, std::move(w), std::move(trace));
}

}  // namespace

IterativeFit run_iterative(const PValueSample& sample, double theta_hat, KernelSpec spec, Bandwidth h,
                           const IterativeConfig& config) {
  check_inputs(sample, theta_hat, spec, config);
  return config.rule == UpdateRule::msl ? run_msl(sample, theta_hat, spec, h, config)
                                        : run_kerfdr(sample, theta_hat, spec, h, config);
}

std::vector<double> apply_weight_map(const PValueSample& sample, double theta_hat, KernelSpec spec, Bandwidth h,
                                     const IterativeConfig& config, std::span<const double> weights) {
  check_inputs(sample, theta_hat, spec, config);
  if (weights.size() != sample.size())
    throw Error(ErrorCode::LengthMismatch, "one weight per observation required");
  std::vector<double> out(sample.size());
  if (config.rule == UpdateRule::kerfdr) {
    const auto f = KerfdrSystem(sample, spec, h).density_at_points(weights);
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = posterior(theta_hat, f[i]);
    return out;
  }
  const MslSystem system(sample.values(), spec, h, config.grid_size);
  const auto f = system.density(weights);
  std::vector<double> log_f;
  log_floored(f, config.density_floor, log_f);
  std::vector<double> f_next(config.grid_size);
  system.sweep(log_f, theta_hat, out, f_next);
  return out;
}

GridFunction msl_grid_density(const PValueSample& sample, KernelSpec spec, Bandwidth h, std::size_t grid_size,
                              std::span<const double> weights) {
  if (weights.size() != sample.size())
    throw Error(ErrorCode::LengthMismatch, "one weight per observation required");
  return GridFunction(MslSystem(sample.values(), spec, h, grid_size).density(weights));
}

}  // namespace lfdrkit

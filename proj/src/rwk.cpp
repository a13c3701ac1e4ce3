#include "lfdrkit/rwk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lfdrkit/error.hpp"
#include "lfdrkit/kde.hpp"
#include "lfdrkit/simd/ops.hpp"

namespace lfdrkit {

WeightedKernelDensity::WeightedKernelDensity(std::vector<double> centers, std::vector<double> weights,
                                             KernelSpec spec, Bandwidth h, bool normalized)
    : centers_(std::move(centers)), weights_(std::move(weights)), spec_(spec), h_(h), normalized_(normalized) {
  if (centers_.size() != weights_.size())
    throw Error(ErrorCode::LengthMismatch, "centers and weights differ in length");
  if (centers_.empty()) throw Error(ErrorCode::InvalidArgument, "density needs at least one center");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw Error(ErrorCode::InvalidArgument, "weights must be non-negative");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-12) throw Error(ErrorCode::InvalidArgument, "weights must sum to 1");

  std::vector<std::size_t> order(centers_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return centers_[a] < centers_[b]; });
  sorted_centers_.reserve(order.size());
  sorted_coef_.reserve(order.size());
  for (std::size_t i : order) {
    double coef = weights_[i] / h_.value();
    if (normalized_) {
      const double mass = unit_interval_mass(spec_, h_, centers_[i]);
      if (!(mass > 0.0)) throw Error(ErrorCode::ZeroMass, "kernel centred at " + std::to_string(centers_[i]) + " has no mass on [0, 1]");
      coef /= mass;
    }
    sorted_centers_.push_back(centers_[i]);
    sorted_coef_.push_back(coef);
  }
}

WeightedKernelDensity WeightedKernelDensity::from_raw_weights(std::vector<double> centers,
                                                              std::span<const double> raw, KernelSpec spec,
                                                              Bandwidth h, bool normalized) {
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorCode::DegenerateWeights, "weights sum to zero");
  std::vector<double> w(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) w[i] = raw[i] / total;
  // Absorb the rounding residue so the sum-to-one check holds exactly enough.
  const double residue = 1.0 - std::accumulate(w.begin(), w.end(), 0.0);
  if (!w.empty()) {
    auto& largest = *std::max_element(w.begin(), w.end());
    largest += residue;
  }
  return WeightedKernelDensity(std::move(centers), std::move(w), spec, h, normalized);
}

double WeightedKernelDensity::operator()(double x) const {
  const auto win = detail::kernel_window(sorted_centers_, x, spec_, h_);
  return simd::best().kernel_sum(spec_.family(), sorted_centers_.data() + win.begin,
                                 sorted_coef_.data() + win.begin, win.end - win.begin, x, 1.0 / h_.value());
}

std::vector<double> WeightedKernelDensity::evaluate(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) out[k] = (*this)(xs[k]);
  return out;
}

PosteriorWeights rwk_weights(const PValueSample& sample, double theta_hat, KernelSpec spec, Bandwidth h) {
  if (!(theta_hat >= 0.0 && theta_hat <= 1.0))
    throw Error(ErrorCode::InvalidTheta, "theta_hat must lie in [0, 1]");
  const auto g = loo_kde_all(sample, spec, h);
  PosteriorWeights out;
  out.tau.resize(g.size());
  if (theta_hat == 0.0) {
    std::fill(out.tau.begin(), out.tau.end(), 1.0);
    return out;
  }
  if (std::all_of(g.begin(), g.end(), [](double v) { return v <= 0.0; }))
    throw Error(ErrorCode::DegenerateWeights, "leave-one-out density vanishes at every observation");
  for (std::size_t i = 0; i < g.size(); ++i)
    out.tau[i] = g[i] > 0.0 ? std::clamp(1.0 - theta_hat / g[i], 0.0, 1.0) : 0.0;
  return out;
}

WeightedKernelDensity rwk_density(const PValueSample& sample, const PosteriorWeights& tau, KernelSpec spec,
                                  Bandwidth h) {
  if (tau.tau.size() != sample.size())
    throw Error(ErrorCode::LengthMismatch, "one posterior weight per observation required");
  const auto v = sample.values();
  return WeightedKernelDensity::from_raw_weights(std::vector<double>(v.begin(), v.end()), tau.tau, spec, h, false);
}

double naive_density(const PValueSample& sample, double theta_hat, KernelSpec spec, Bandwidth h, double x) {
  if (!(theta_hat >= 0.0 && theta_hat <= 1.0))
    throw Error(ErrorCode::InvalidTheta, "theta_hat must lie in [0, 1]");
  if (theta_hat == 1.0) return 0.0;
  return std::max(0.0, (kde(sample, spec, h, x) - theta_hat) / (1.0 - theta_hat));
}

NaiveDensity::NaiveDensity(PValueSample sample, double theta_hat, KernelSpec spec, Bandwidth h)
    : sample_(std::move(sample)), theta_(theta_hat), spec_(spec), h_(h) {
  if (!(theta_hat >= 0.0 && theta_hat <= 1.0))
    throw Error(ErrorCode::InvalidTheta, "theta_hat must lie in [0, 1]");
}

double NaiveDensity::operator()(double x) const { return naive_density(sample_, theta_, spec_, h_, x); }

std::vector<double> NaiveDensity::evaluate(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) out[k] = (*this)(xs[k]);
  return out;
}

}  // namespace lfdrkit

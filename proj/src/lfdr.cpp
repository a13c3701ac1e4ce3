#include "lfdrkit/lfdr.hpp"

#include <algorithm>
#include <numeric>

#include "lfdrkit/error.hpp"

namespace lfdrkit {

double lfdr_estimate(double theta_hat, double f_hat_at_x) {
  if (!(theta_hat >= 0.0 && theta_hat <= 1.0)) throw Error(ErrorCode::InvalidTheta, "theta_hat must lie in [0, 1]");
  if (!(f_hat_at_x >= 0.0)) throw Error(ErrorCode::InvalidArgument, "density value must be non-negative");
  if (theta_hat == 1.0) return 1.0;
  if (theta_hat == 0.0 && f_hat_at_x == 0.0)
    throw Error(ErrorCode::Indeterminate, "lFDR is 0/0 for theta_hat = 0 and f_hat = 0");
  return theta_hat / (theta_hat + (1.0 - theta_hat) * f_hat_at_x);
}

std::vector<double> fdr_from_lfdr(std::span<const double> lfdr_sorted_by_p) {
  if (lfdr_sorted_by_p.empty()) throw Error(ErrorCode::EmptyInput, "no lFDR values");
  std::vector<double> out(lfdr_sorted_by_p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    acc += lfdr_sorted_by_p[i];
    out[i] = acc / static_cast<double>(i + 1);
  }
  return out;
}

std::vector<double> fdr_in_input_order(std::span<const double> p_values, std::span<const double> lfdr) {
  if (p_values.size() != lfdr.size()) throw Error(ErrorCode::LengthMismatch, "p-values and lFDR differ in length");
  std::vector<std::size_t> order(p_values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
  std::vector<double> sorted(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) sorted[k] = lfdr[order[k]];
  const auto running = fdr_from_lfdr(sorted);
  std::vector<double> out(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) out[order[k]] = running[k];
  return out;
}

}  // namespace lfdrkit

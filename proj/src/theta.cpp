#include "lfdrkit/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lfdrkit/error.hpp"
#include "lfdrkit/random.hpp"

namespace lfdrkit {

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw Error(ErrorCode::InvalidLambda, "lambda must lie in [0, 1), got " + std::to_string(lambda));
}

double ratio(std::size_t above, std::size_t n, double lambda) {
  return std::min(1.0, static_cast<double>(above) / (static_cast<double>(n) * (1.0 - lambda)));
}

}  // namespace

ThetaEstimate theta_at_lambda(const PValueSample& sample, double lambda) {
  check_lambda(lambda);
  const auto sorted = sample.sorted();
  const auto above = static_cast<std::size_t>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), lambda));
  return {ratio(above, sample.size(), lambda), lambda, ThetaMethod::fixed_lambda};
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
  return grid;
}

ThetaEstimate bootstrap_theta(const PValueSample& sample, std::span<const double> lambda_grid,
                              int replicates, std::uint64_t seed) {
  if (lambda_grid.empty()) throw Error(ErrorCode::EmptyGrid, "lambda grid is empty");
  for (double l : lambda_grid) check_lambda(l);
  if (replicates < 1) throw Error(ErrorCode::InvalidArgument, "bootstrap needs at least one replicate");

  std::vector<double> grid(lambda_grid.begin(), lambda_grid.end());
  std::sort(grid.begin(), grid.end());
  const std::size_t m = grid.size();
  const std::size_t n = sample.size();

  std::vector<double> original(m);
  for (std::size_t k = 0; k < m; ++k) original[k] = theta_at_lambda(sample, grid[k]).value;
  const double floor_estimate = *std::min_element(original.begin(), original.end());

  // hist[k] counts draws with exactly k grid values strictly below them, so
  // #{X* > grid[k]} is the tail sum of hist over bins k+1..m.
  std::vector<double> mse(m, 0.0);
  std::vector<std::size_t> hist(m + 1);
  const auto values = sample.values();
  for (int b = 0; b < replicates; ++b) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(b)}));
    std::fill(hist.begin(), hist.end(), 0);
    for (std::size_t draw = 0; draw < n; ++draw) {
      const double x = values[rng.below(n)];
      ++hist[static_cast<std::size_t>(std::lower_bound(grid.begin(), grid.end(), x) - grid.begin())];
    }
    std::size_t above = 0;
    for (std::size_t k = m; k-- > 0;) {
      above += hist[k + 1];
      const double d = ratio(above, n, grid[k]) - floor_estimate;
      mse[k] += d * d;
    }
  }

  // Sorted ascending, so the first minimum is the smallest lambda.
  const auto best = static_cast<std::size_t>(std::min_element(mse.begin(), mse.end()) - mse.begin());
  return {original[best], grid[best], ThetaMethod::bootstrap};
}

}  // namespace lfdrkit

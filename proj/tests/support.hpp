#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lfdrkit/random.hpp"
#include "lfdrkit/sample.hpp"
#include "lfdrkit/simulation.hpp"

namespace lfdrkit::testing {

inline std::vector<double> uniforms(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = rng.uniform();
  return out;
}

inline PValueSample model_sample(ModelKind kind, double theta, std::size_t n, std::uint64_t seed) {
  return PValueSample(generate_sample(SimulationModel::standard(kind, theta), n, seed).p_values);
}

// Midpoint rule on [a, b] with m cells.
inline double integrate(const std::function<double(double)>& fn, double a, double b, std::size_t m) {
  const double dx = (b - a) / static_cast<double>(m);
  double s = 0.0;
  for (std::size_t j = 0; j < m; ++j) s += fn(a + (static_cast<double>(j) + 0.5) * dx);
  return s * dx;
}

// Three-point Gauss-Legendre on each piece between sorted breakpoints, with
// `split` equal sub-pieces. Exact for piecewise polynomials of degree <= 5
// whose kinks are breakpoints, and never evaluates at a breakpoint.
inline double integrate_pieces(const std::function<double(double)>& fn, std::vector<double> breaks,
                               std::size_t split = 1) {
  std::sort(breaks.begin(), breaks.end());
  const double node = std::sqrt(0.6);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double width = (breaks[k + 1] - breaks[k]) / static_cast<double>(split);
    if (!(width > 0.0)) continue;
    for (std::size_t j = 0; j < split; ++j) {
      const double c = breaks[k] + (static_cast<double>(j) + 0.5) * width;
      const double r = 0.5 * width;
      total += r * (5.0 * fn(c - r * node) + 8.0 * fn(c) + 5.0 * fn(c + r * node)) / 9.0;
    }
  }
  return total;
}

// Breakpoints of a compact-kernel mixture centred at `centers`.
inline std::vector<double> kernel_breaks(std::span<const double> centers, double h) {
  std::vector<double> b;
  for (double c : centers) b.insert(b.end(), {c - h, c, c + h});
  return b;
}

}  // namespace lfdrkit::testing

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lfdrkit {

/// Observed p-values X_1..X_n. Keeps a sorted copy so that compact-kernel
/// sums only visit the observations inside the kernel window.
class PValueSample {
public:
  /// Throws InvalidSample if empty or if any value lies outside [0, 1]
  /// (NaN included).
  explicit PValueSample(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<const double> sorted() const { return sorted_; }

private:
  std::vector<double> values_;
  std::vector<double> sorted_;
};

}  // namespace lfdrkit

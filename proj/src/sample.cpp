#include "lfdrkit/sample.hpp"

#include <algorithm>
#include <string>

#include "lfdrkit/error.hpp"

namespace lfdrkit {

PValueSample::PValueSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::InvalidSample, "p-value sample is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!(v >= 0.0 && v <= 1.0))
      throw Error(ErrorCode::InvalidSample,
                  "p-value at index " + std::to_string(i) + " is outside [0, 1]: " + std::to_string(v));
  }
  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end());
}

}  // namespace lfdrkit

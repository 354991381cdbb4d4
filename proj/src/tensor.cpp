#include "ahg/tensor.hpp"

#include <algorithm>

namespace ahg {

double CTensor::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace ahg

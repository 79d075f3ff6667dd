// SPDX-License-Identifier: Apache-2.0
#include "freemoe/specnorm.hpp"

#include <cmath>

namespace freemoe {

double block_growth_factor(unsigned n, unsigned k) {
  if (n == 0) {
    throw std::invalid_argument("N must be positive");
  }
  return std::sqrt(std::expm1(static_cast<double>(k) * std::log1p(9.0 / n)));
}

template MomentBound moment_lower(const FloatElement&, const MomentOptions&);
template MomentBound moment_lower(const ExactElement&, const MomentOptions&);

}  // namespace freemoe

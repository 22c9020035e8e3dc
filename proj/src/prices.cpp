// Copyright 2026 The Stocore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stocore/prices.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stocore {

double max_clearing_error(const ShareProfile& shares) {
  double worst = 0.0;
  for (std::size_t m = 0; m < shares.tasks(); ++m)
    for (std::size_t s = 0; s < shares.states(); ++s)
      worst = std::max(worst, std::abs(shares.column_sum(m, s) - 1.0));
  return worst;
}

PriceSystem PriceSystem::normalized() const {
  PriceSystem out = *this;
  for (std::size_t s = 0; s < states(); ++s) {
    const double numeraire = (*this)(0, s);
    for (std::size_t m = 0; m < tasks(); ++m) out(m, s) = (*this)(m, s) / numeraire;
  }
  return out;
}

void PriceSystem::require_positive() const {
  for (double p : values())
    if (!std::isfinite(p) || p <= 0.0)
      throw std::invalid_argument("prices must be finite and strictly positive");
}

double PriceSystem::value(std::size_t s, std::span<const double> task_vector) const {
  double total = 0.0;
  for (std::size_t m = 0; m < tasks(); ++m) total += (*this)(m, s) * task_vector[m];
  return total;
}

}  // namespace stocore

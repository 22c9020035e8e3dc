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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "stocore/arrival.hpp"

namespace stocore {

/// Deterministic-equivalent load of share r of Q = sum_j q_j with
/// q_j ~ Exponential(rates[j]) independent, for an exponential-utility agent
/// with performance index rho:  rho * sum_j ln(1 + r / (rho * rate_j)).
double ce_exponential_load(double rho, std::span<const double> rates, double share);

/// -rho ln E[exp(-share * Q / rho)] for Q the sum of independent arrivals.
/// All-exponential inputs delegate to ce_exponential_load; everything else
/// goes through the closed-form cumulant generating function of each kind.
double ce_generic(double rho, std::span<const ArrivalSpec> components, double share);

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;  // delta-method standard error of value
  std::size_t samples = 0;
};

/// Sample estimate of -rho ln mean(exp(-reward / rho)). Computed relative to
/// the smallest reward so a constant sample returns that constant exactly.
MonteCarloEstimate ce_of_rewards(double rho, std::span<const double> rewards);

/// Independent Monte Carlo check of ce_generic: K i.i.d. draws of the total
/// load, reward share * Q. Reproducible for a fixed seed.
MonteCarloEstimate mc_ce_oracle(double rho, std::span<const ArrivalSpec> components,
                                double share, std::size_t samples, std::uint64_t seed);

}  // namespace stocore

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

#include "stocore/certainty_equivalent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "stocore/seeding.hpp"

namespace stocore {
namespace {

void check_rho_share(double rho, double share) {
  if (!std::isfinite(rho) || rho <= 0.0)
    throw std::invalid_argument("rho must be strictly positive and finite");
  if (!(share >= 0.0 && share <= 1.0)) throw std::invalid_argument("share must lie in [0, 1]");
}

}  // namespace

double ce_exponential_load(double rho, std::span<const double> rates, double share) {
  check_rho_share(rho, share);
  double total = 0.0;
  for (double rate : rates) {
    if (!std::isfinite(rate) || rate <= 0.0)
      throw std::invalid_argument("arrival rate must be strictly positive");
    total += std::log1p(share / (rho * rate));
  }
  return rho * total;
}

double ce_generic(double rho, std::span<const ArrivalSpec> components, double share) {
  check_rho_share(rho, share);
  const bool all_exponential =
      std::all_of(components.begin(), components.end(), [](const ArrivalSpec& a) {
        return a.kind() == ArrivalSpec::Kind::Exponential;
      });
  if (all_exponential) {
    std::vector<double> rates;
    rates.reserve(components.size());
    for (const ArrivalSpec& a : components) rates.push_back(a.first());
    return ce_exponential_load(rho, rates, share);
  }
  double cumulant = 0.0;
  for (const ArrivalSpec& a : components) {
    const std::string problem = a.domain_error();
    if (!problem.empty()) throw std::invalid_argument(problem);
    cumulant += a.cumulant(-share / rho);
  }
  return -rho * cumulant;
}

MonteCarloEstimate ce_of_rewards(double rho, std::span<const double> rewards) {
  if (!std::isfinite(rho) || rho <= 0.0)
    throw std::invalid_argument("rho must be strictly positive and finite");
  if (rewards.empty()) throw std::invalid_argument("need at least one reward sample");
  const double floor = *std::min_element(rewards.begin(), rewards.end());
  // Welford on exp(-(x - floor) / rho), all terms in (0, 1]
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double x : rewards) {
    const double e = std::exp(-(x - floor) / rho);
    ++k;
    const double delta = e - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (e - mean);
  }
  MonteCarloEstimate est;
  est.samples = k;
  est.value = floor - rho * std::log(mean);
  if (k > 1) {
    const double sd = std::sqrt(m2 / static_cast<double>(k - 1));
    est.std_error = rho * sd / (std::sqrt(static_cast<double>(k)) * mean);
  }
  return est;
}

MonteCarloEstimate mc_ce_oracle(double rho, std::span<const ArrivalSpec> components,
                                double share, std::size_t samples, std::uint64_t seed) {
  check_rho_share(rho, share);
  if (samples == 0) throw std::invalid_argument("n_samples must be at least 1");
  for (const ArrivalSpec& a : components) {
    const std::string problem = a.domain_error();
    if (!problem.empty()) throw std::invalid_argument(problem);
  }
  auto rng = make_stream(seed, "mc-ce-oracle");
  std::vector<double> rewards(samples);
  for (double& reward : rewards) {
    double total = 0.0;
    for (const ArrivalSpec& a : components) total += a.sample(rng);
    reward = share * total;
  }
  return ce_of_rewards(rho, rewards);
}

}  // namespace stocore

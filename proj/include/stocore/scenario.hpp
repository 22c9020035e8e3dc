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
#include <stdexcept>
#include <string>
#include <vector>

#include "stocore/arrival.hpp"
#include "stocore/tables.hpp"

namespace stocore {

/// Raised when a scenario violates one of the model assumptions. The
/// message names the offending indices (1-based, as in reports).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raw description of an economy: N agents, M task types, S network states.
struct Scenario {
  std::string name;
  std::size_t agents = 0;
  std::size_t tasks = 0;
  std::size_t states = 0;
  EfficiencyTable rho;                 // performance index rho_nm^(s)
  std::vector<ArrivalSpec> arrival;    // agent-major [n][m][s]
  std::vector<double> beliefs;         // [n][s], each row a probability vector
  std::uint64_t seed = 0;

  /// Allocates tables of the right shape; rho = 1, arrivals Exponential(1),
  /// uniform beliefs.
  static Scenario with_shape(std::size_t agents, std::size_t tasks, std::size_t states);

  const ArrivalSpec& arrival_at(std::size_t n, std::size_t m, std::size_t s) const {
    return arrival[(n * tasks + m) * states + s];
  }
  ArrivalSpec& arrival_at(std::size_t n, std::size_t m, std::size_t s) {
    return arrival[(n * tasks + m) * states + s];
  }
  double belief(std::size_t n, std::size_t s) const { return beliefs[n * states + s]; }
  double& belief(std::size_t n, std::size_t s) { return beliefs[n * states + s]; }
};

/// A scenario that passed validate_scenario. Immutable; safe to share
/// read-only between threads.
class ValidatedScenario {
 public:
  const Scenario& get() const { return scenario_; }
  const Scenario* operator->() const { return &scenario_; }

  std::size_t agents() const { return scenario_.agents; }
  std::size_t tasks() const { return scenario_.tasks; }
  std::size_t states() const { return scenario_.states; }
  double rho(std::size_t n, std::size_t m, std::size_t s) const { return scenario_.rho(n, m, s); }
  double belief(std::size_t n, std::size_t s) const { return scenario_.belief(n, s); }
  const ArrivalSpec& arrival(std::size_t n, std::size_t m, std::size_t s) const {
    return scenario_.arrival_at(n, m, s);
  }
  /// Arrivals of every agent for market (m, s); their sum is Q_m^(s).
  std::vector<ArrivalSpec> market_arrivals(std::size_t m, std::size_t s) const;

 private:
  explicit ValidatedScenario(Scenario scenario) : scenario_(std::move(scenario)) {}
  friend ValidatedScenario validate_scenario(Scenario raw);

  Scenario scenario_;
};

/// Checks every structural and model invariant and returns the scenario on
/// success. Belief rows within 1e-9 of summing to one are renormalized.
ValidatedScenario validate_scenario(Scenario raw);

/// Certainty-equivalent endowment q_{nm,D}^(s) = -rho ln E[exp(-q/rho)] of
/// each agent's own arrival, divided by the column total over agents.
EndowmentShares endowment_shares(const ValidatedScenario& scn);

/// Unnormalized certainty-equivalent endowments q_{nm,D}^(s).
EndowmentShares endowment_loads(const ValidatedScenario& scn);

}  // namespace stocore

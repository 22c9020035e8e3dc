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
#include <span>
#include <stdexcept>
#include <vector>

#include "stocore/arrival.hpp"
#include "stocore/scenario.hpp"
#include "stocore/tables.hpp"

namespace stocore {

/// Exponential utility of a deterministic load: rho (1 - exp(-x / rho)).
double task_utility(double rho, double load);

struct ShareUtility {
  double value = 0.0;
  double marginal = 0.0;
};

/// Utility of receiving share r of a stochastic market total Q, evaluated at
/// its certainty equivalent:  g(r) = rho (1 - E[exp(-r Q / rho)]).
/// For exponential contributors this is rho (1 - prod_j lambda_j rho / (lambda_j rho + r)).
class ShareCurve {
 public:
  ShareCurve(double rho, std::vector<ArrivalSpec> contributors);

  double rho() const { return rho_; }
  double value(double share) const;
  /// g'(r); strictly decreasing in r and positive on [0, 1].
  double marginal(double share) const;
  /// g''(r) < 0.
  double curvature(double share) const;
  ShareUtility evaluate(double share) const { return {value(share), marginal(share)}; }

 private:
  double rho_;
  std::vector<ArrivalSpec> contributors_;
};

/// Every agent's share curve for every market, built once per scenario.
class UtilityModel {
 public:
  explicit UtilityModel(const ValidatedScenario& scn);

  std::size_t agents() const { return agents_; }
  std::size_t tasks() const { return tasks_; }
  std::size_t states() const { return states_; }

  const ShareCurve& curve(std::size_t n, std::size_t m, std::size_t s) const {
    return curves_[(n * tasks_ + m) * states_ + s];
  }
  double belief(std::size_t n, std::size_t s) const { return beliefs_[n * states_ + s]; }

  /// u_{n,D}^(s): deterministic-equivalent utility of agent n in state s.
  double state_utility(std::size_t n, std::size_t s, const ShareProfile& shares) const;
  /// v_{n,D}: belief-weighted sum of state utilities.
  double expected_utility(std::size_t n, const ShareProfile& shares) const;

 private:
  std::size_t agents_, tasks_, states_;
  std::vector<ShareCurve> curves_;
  std::vector<double> beliefs_;
};

ShareUtility composite_share_utility(const ValidatedScenario& scn, std::size_t n, std::size_t m,
                                     std::size_t s, double share);

double expected_utility(const ValidatedScenario& scn, std::size_t n, const ShareProfile& shares);

class DemandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DemandResult {
  std::vector<double> shares;  // one entry per task, each in [0, 1]
  double multiplier = 0.0;     // budget shadow price mu
  double budget_slack = 0.0;   // p.w - p.r
};

/// Maximizes sum_m g_m(r_m) over r in [0,1]^M subject to p.r <= budget.
/// Bracketed Newton on the budget multiplier, safeguarded Newton on each
/// marginal condition g'_m(r_m) = mu p_m.
DemandResult solve_demand(std::span<const ShareCurve* const> curves,
                          std::span<const double> prices, double budget);

/// Demand of agent n in state s at the given prices, funded by its endowment
/// shares (one per task).
DemandResult demand(const UtilityModel& model, std::size_t n, std::size_t s,
                    std::span<const double> prices, std::span<const double> endowment);
DemandResult demand(const ValidatedScenario& scn, std::size_t n, std::size_t s,
                    std::span<const double> prices, std::span<const double> endowment);

}  // namespace stocore

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
#include <iosfwd>
#include <string>
#include <vector>

#include "stocore/scenario.hpp"
#include "stocore/tables.hpp"

namespace stocore {

enum class AllocationMethod { Walrasian, WeightedMatching, Random, Equal };

const char* to_string(AllocationMethod method);

struct BaselineAllocation {
  AllocationMethod method = AllocationMethod::Equal;
  ShareProfile shares;
};

/// Whole-task assignment for one state: agent_of_task[m] receives all of task m.
struct Matching {
  std::vector<std::size_t> agent_of_task;
  double weight = 0.0;  // sum of the assigned rho
};

/// Maximum-weight assignment of tasks to distinct agents with edge weights
/// rho[n][m][s]. Among optimal assignments the one giving task 1 the lowest
/// possible agent index wins, then task 2, and so on. Requires M <= N.
Matching weighted_matching(const ValidatedScenario& scn, std::size_t state);

/// Weighted matching applied independently in every state.
BaselineAllocation weighted_matching_allocation(const ValidatedScenario& scn);

/// Per market, N independent uniforms normalized to sum to one.
BaselineAllocation random_allocation(const ValidatedScenario& scn, std::uint64_t seed);

/// Every share 1/N.
BaselineAllocation equal_allocation(const ValidatedScenario& scn);

struct RealizedUtility {
  double mean = 0.0;       // belief-weighted sample mean of realized utility
  double std_error = 0.0;
  double predicted = 0.0;  // expected deterministic-equivalent utility
};

/// Replays random arrivals: per state and draw, samples every q_nm, forms the
/// market totals Q_m, and scores agent n's realized reward r_nm Q_m with the
/// exponential utility. One entry per agent.
std::vector<RealizedUtility> simulate_realized_utilities(const ValidatedScenario& scn,
                                                         const ShareProfile& shares,
                                                         std::size_t draws, std::uint64_t seed);

struct WelfareRow {
  AllocationMethod method = AllocationMethod::Equal;
  double welfare = 0.0;             // sum of expected utilities
  std::vector<double> per_agent;    // expected utility of each agent
};

struct WelfareComparison {
  std::vector<WelfareRow> rows;

  double welfare(AllocationMethod method) const;
};

WelfareComparison welfare_report(const ValidatedScenario& scn,
                                 const std::vector<BaselineAllocation>& allocations);

struct EfficiencyRow {
  std::size_t agent = 0;
  std::size_t task = 0;
  std::size_t state = 0;
  double relative_index = 0.0;  // rho share within the market
  double share = 0.0;
};

std::vector<EfficiencyRow> efficiency_share_table(const ValidatedScenario& scn,
                                                  const ShareProfile& shares);

/// agent, mean_realized, std_error, ce_predicted, normalized_realized, normalized_predicted
void write_indifference_csv(std::ostream& os, const std::vector<RealizedUtility>& rows);
/// agent, task, state, relative_index, share
void write_efficiency_csv(std::ostream& os, const std::vector<EfficiencyRow>& rows);
/// method, welfare, then one utility column per agent
void write_welfare_csv(std::ostream& os, const WelfareComparison& report);

}  // namespace stocore

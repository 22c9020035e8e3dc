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

#include "stocore/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "stocore/csv.hpp"
#include "stocore/preference.hpp"
#include "stocore/seeding.hpp"

namespace stocore {
namespace {

// Hungarian method (potentials form) for a rows x cols cost matrix with
// rows <= cols. Returns the column assigned to each row at minimum total cost.
std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t rows = cost.size();
  if (rows == 0) return {};
  const std::size_t cols = cost[0].size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<std::size_t> owner(cols + 1, 0), way(cols + 1, 0);
  for (std::size_t i = 1; i <= rows; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(cols + 1, inf);
    std::vector<bool> used(cols + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = owner[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col_of_row(rows);
  for (std::size_t j = 1; j <= cols; ++j)
    if (owner[j] != 0) col_of_row[owner[j] - 1] = j - 1;
  return col_of_row;
}

// Best total weight assigning `tasks` to distinct members of `agents`.
double best_weight(const ValidatedScenario& scn, std::size_t s,
                   const std::vector<std::size_t>& tasks, const std::vector<std::size_t>& agents) {
  if (tasks.empty()) return 0.0;
  std::vector<std::vector<double>> cost(tasks.size(), std::vector<double>(agents.size()));
  for (std::size_t i = 0; i < tasks.size(); ++i)
    for (std::size_t j = 0; j < agents.size(); ++j) cost[i][j] = -scn.rho(agents[j], tasks[i], s);
  const std::vector<std::size_t> pick = min_cost_assignment(cost);
  double total = 0.0;
  for (std::size_t i = 0; i < tasks.size(); ++i) total += scn.rho(agents[pick[i]], tasks[i], s);
  return total;
}

}  // namespace

const char* to_string(AllocationMethod method) {
  switch (method) {
    case AllocationMethod::Walrasian: return "walrasian";
    case AllocationMethod::WeightedMatching: return "weighted-matching";
    case AllocationMethod::Random: return "random";
    case AllocationMethod::Equal: return "equal";
  }
  return "unknown";
}

Matching weighted_matching(const ValidatedScenario& scn, std::size_t state) {
  const std::size_t N = scn.agents(), M = scn.tasks();
  if (M > N)
    throw std::invalid_argument("weighted matching needs at least as many agents as tasks");
  if (state >= scn.states()) throw std::out_of_range("state index out of range");

  std::vector<std::size_t> remaining_tasks(M), free_agents(N);
  for (std::size_t m = 0; m < M; ++m) remaining_tasks[m] = m;
  for (std::size_t n = 0; n < N; ++n) free_agents[n] = n;
  const double optimum = best_weight(scn, state, remaining_tasks, free_agents);
  const double slack = 1e-12 * std::max(1.0, optimum);

  // Fix tasks in order, each to the lowest agent that still admits an optimum.
  Matching out;
  out.agent_of_task.resize(M);
  double fixed = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    remaining_tasks.erase(remaining_tasks.begin());
    for (auto it = free_agents.begin(); it != free_agents.end(); ++it) {
      const std::size_t n = *it;
      std::vector<std::size_t> others = free_agents;
      others.erase(others.begin() + (it - free_agents.begin()));
      const double w = scn.rho(n, m, state);
      if (fixed + w + best_weight(scn, state, remaining_tasks, others) >= optimum - slack) {
        out.agent_of_task[m] = n;
        fixed += w;
        free_agents = std::move(others);
        break;
      }
    }
  }
  out.weight = fixed;
  return out;
}

BaselineAllocation weighted_matching_allocation(const ValidatedScenario& scn) {
  BaselineAllocation out{AllocationMethod::WeightedMatching,
                         ShareProfile(scn.agents(), scn.tasks(), scn.states())};
  for (std::size_t s = 0; s < scn.states(); ++s) {
    const Matching match = weighted_matching(scn, s);
    for (std::size_t m = 0; m < scn.tasks(); ++m) out.shares(match.agent_of_task[m], m, s) = 1.0;
  }
  return out;
}

BaselineAllocation random_allocation(const ValidatedScenario& scn, std::uint64_t seed) {
  BaselineAllocation out{AllocationMethod::Random,
                         ShareProfile(scn.agents(), scn.tasks(), scn.states())};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t m = 0; m < scn.tasks(); ++m)
    for (std::size_t s = 0; s < scn.states(); ++s) {
      auto rng = make_stream(seed, "random-allocation", {m, s});
      double total = 0.0;
      while (total <= 0.0) {
        total = 0.0;
        for (std::size_t n = 0; n < scn.agents(); ++n) total += (out.shares(n, m, s) = unit(rng));
      }
      for (std::size_t n = 0; n < scn.agents(); ++n) out.shares(n, m, s) /= total;
    }
  return out;
}

BaselineAllocation equal_allocation(const ValidatedScenario& scn) {
  return {AllocationMethod::Equal,
          ShareProfile(scn.agents(), scn.tasks(), scn.states(),
                       1.0 / static_cast<double>(scn.agents()))};
}

std::vector<RealizedUtility> simulate_realized_utilities(const ValidatedScenario& scn,
                                                         const ShareProfile& shares,
                                                         std::size_t draws, std::uint64_t seed) {
  if (draws == 0) throw std::invalid_argument("draws must be at least 1");
  if (!shares.same_shape(scn.agents(), scn.tasks(), scn.states()))
    throw std::invalid_argument("share profile shape does not match the scenario");
  const std::size_t N = scn.agents(), M = scn.tasks(), S = scn.states();
  const UtilityModel model(scn);

  std::vector<RealizedUtility> out(N);
  std::vector<double> variance(N, 0.0);
  std::vector<double> totals(M);
  for (std::size_t s = 0; s < S; ++s) {
    auto rng = make_stream(seed, "realized-utility", {s});
    // Welford per agent for this state
    std::vector<double> mean(N, 0.0), m2(N, 0.0);
    for (std::size_t d = 0; d < draws; ++d) {
      for (std::size_t m = 0; m < M; ++m) {
        totals[m] = 0.0;
        for (std::size_t n = 0; n < N; ++n) totals[m] += scn.arrival(n, m, s).sample(rng);
      }
      for (std::size_t n = 0; n < N; ++n) {
        double u = 0.0;
        for (std::size_t m = 0; m < M; ++m) u += task_utility(scn.rho(n, m, s), shares(n, m, s) * totals[m]);
        const double delta = u - mean[n];
        mean[n] += delta / static_cast<double>(d + 1);
        m2[n] += delta * (u - mean[n]);
      }
    }
    for (std::size_t n = 0; n < N; ++n) {
      const double a = scn.belief(n, s);
      out[n].mean += a * mean[n];
      if (draws > 1) variance[n] += a * a * m2[n] / static_cast<double>(draws - 1) / static_cast<double>(draws);
    }
  }
  for (std::size_t n = 0; n < N; ++n) {
    out[n].std_error = std::sqrt(variance[n]);
    out[n].predicted = model.expected_utility(n, shares);
  }
  return out;
}

double WelfareComparison::welfare(AllocationMethod method) const {
  for (const WelfareRow& row : rows)
    if (row.method == method) return row.welfare;
  throw std::out_of_range(std::string("no welfare row for ") + to_string(method));
}

WelfareComparison welfare_report(const ValidatedScenario& scn,
                                 const std::vector<BaselineAllocation>& allocations) {
  const UtilityModel model(scn);
  WelfareComparison report;
  for (const BaselineAllocation& alloc : allocations) {
    if (!alloc.shares.same_shape(scn.agents(), scn.tasks(), scn.states()))
      throw std::invalid_argument(std::string("allocation shape mismatch for ") + to_string(alloc.method));
    WelfareRow row;
    row.method = alloc.method;
    for (std::size_t n = 0; n < scn.agents(); ++n) {
      row.per_agent.push_back(model.expected_utility(n, alloc.shares));
      row.welfare += row.per_agent.back();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<EfficiencyRow> efficiency_share_table(const ValidatedScenario& scn,
                                                  const ShareProfile& shares) {
  if (!shares.same_shape(scn.agents(), scn.tasks(), scn.states()))
    throw std::invalid_argument("share profile shape does not match the scenario");
  std::vector<EfficiencyRow> rows;
  for (std::size_t m = 0; m < scn.tasks(); ++m)
    for (std::size_t s = 0; s < scn.states(); ++s) {
      double total = 0.0;
      for (std::size_t n = 0; n < scn.agents(); ++n) total += scn.rho(n, m, s);
      for (std::size_t n = 0; n < scn.agents(); ++n)
        rows.push_back({n, m, s, scn.rho(n, m, s) / total, shares(n, m, s)});
    }
  std::sort(rows.begin(), rows.end(), [](const EfficiencyRow& a, const EfficiencyRow& b) {
    return std::tie(a.agent, a.task, a.state) < std::tie(b.agent, b.task, b.state);
  });
  return rows;
}

void write_indifference_csv(std::ostream& os, const std::vector<RealizedUtility>& rows) {
  double realized = 0.0, predicted = 0.0;
  for (const RealizedUtility& r : rows) {
    realized += r.mean;
    predicted += r.predicted;
  }
  os << "agent,mean_realized,std_error,ce_predicted,normalized_realized,normalized_predicted\n";
  for (std::size_t n = 0; n < rows.size(); ++n)
    os << n + 1 << ',' << csv::real(rows[n].mean) << ',' << csv::real(rows[n].std_error) << ','
       << csv::real(rows[n].predicted) << ','
       << csv::real(realized > 0.0 ? rows[n].mean / realized : 0.0) << ','
       << csv::real(predicted > 0.0 ? rows[n].predicted / predicted : 0.0) << '\n';
}

void write_efficiency_csv(std::ostream& os, const std::vector<EfficiencyRow>& rows) {
  os << "agent,task,state,relative_index,share\n";
  for (const EfficiencyRow& r : rows)
    os << r.agent + 1 << ',' << r.task + 1 << ',' << r.state + 1 << ','
       << csv::real(r.relative_index) << ',' << csv::real(r.share) << '\n';
}

void write_welfare_csv(std::ostream& os, const WelfareComparison& report) {
  os << "method,welfare";
  const std::size_t agents = report.rows.empty() ? 0 : report.rows.front().per_agent.size();
  for (std::size_t n = 0; n < agents; ++n) os << ",agent_" << n + 1;
  os << '\n';
  for (const WelfareRow& row : report.rows) {
    os << to_string(row.method) << ',' << csv::real(row.welfare);
    for (double v : row.per_agent) os << ',' << csv::real(v);
    os << '\n';
  }
}

}  // namespace stocore

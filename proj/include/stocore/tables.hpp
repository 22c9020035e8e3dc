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

namespace stocore {

/// Dense (agent, task, state) table stored agent-major. The tag parameter
/// keeps shares, endowments and efficiency indices from being mixed up.
template <class Tag>
class AgentTaskStateTable {
 public:
  AgentTaskStateTable() = default;
  AgentTaskStateTable(std::size_t agents, std::size_t tasks, std::size_t states,
                      double fill = 0.0)
      : agents_(agents), tasks_(tasks), states_(states),
        data_(agents * tasks * states, fill) {}

  std::size_t agents() const { return agents_; }
  std::size_t tasks() const { return tasks_; }
  std::size_t states() const { return states_; }

  double& operator()(std::size_t n, std::size_t m, std::size_t s) {
    return data_[index(n, m, s)];
  }
  double operator()(std::size_t n, std::size_t m, std::size_t s) const {
    return data_[index(n, m, s)];
  }

  double& at(std::size_t n, std::size_t m, std::size_t s) {
    check(n, m, s);
    return data_[index(n, m, s)];
  }
  double at(std::size_t n, std::size_t m, std::size_t s) const {
    check(n, m, s);
    return data_[index(n, m, s)];
  }

  /// Sum over agents for one (task, state) market.
  double column_sum(std::size_t m, std::size_t s) const {
    double total = 0.0;
    for (std::size_t n = 0; n < agents_; ++n) total += (*this)(n, m, s);
    return total;
  }

  std::span<const double> values() const { return data_; }
  std::span<double> values() { return data_; }

  bool same_shape(std::size_t agents, std::size_t tasks, std::size_t states) const {
    return agents_ == agents && tasks_ == tasks && states_ == states;
  }

  friend bool operator==(const AgentTaskStateTable&, const AgentTaskStateTable&) = default;

 private:
  std::size_t index(std::size_t n, std::size_t m, std::size_t s) const {
    return (n * tasks_ + m) * states_ + s;
  }
  void check(std::size_t n, std::size_t m, std::size_t s) const {
    if (n >= agents_ || m >= tasks_ || s >= states_)
      throw std::out_of_range("agent/task/state index out of range");
  }

  std::size_t agents_ = 0;
  std::size_t tasks_ = 0;
  std::size_t states_ = 0;
  std::vector<double> data_;
};

/// Dense (task, state) table, one entry per state-contingent market.
template <class Tag>
class TaskStateTable {
 public:
  TaskStateTable() = default;
  TaskStateTable(std::size_t tasks, std::size_t states, double fill = 0.0)
      : tasks_(tasks), states_(states), data_(tasks * states, fill) {}

  std::size_t tasks() const { return tasks_; }
  std::size_t states() const { return states_; }

  double& operator()(std::size_t m, std::size_t s) { return data_[m * states_ + s]; }
  double operator()(std::size_t m, std::size_t s) const { return data_[m * states_ + s]; }

  /// Values of every task in state s, in task order.
  std::vector<double> state_slice(std::size_t s) const {
    std::vector<double> out(tasks_);
    for (std::size_t m = 0; m < tasks_; ++m) out[m] = (*this)(m, s);
    return out;
  }

  std::span<const double> values() const { return data_; }
  std::span<double> values() { return data_; }

  friend bool operator==(const TaskStateTable&, const TaskStateTable&) = default;

 private:
  std::size_t tasks_ = 0;
  std::size_t states_ = 0;
  std::vector<double> data_;
};

namespace tags {
struct Share;
struct Endowment;
struct Efficiency;
struct Price;
struct Excess;
struct CoalitionWealth;
}  // namespace tags

/// r[n][m][s]: share of the state-contingent total load Q_m^(s) assigned to agent n.
using ShareProfile = AgentTaskStateTable<tags::Share>;
/// w[n][m][s]: certainty-equivalent endowment share of agent n.
using EndowmentShares = AgentTaskStateTable<tags::Endowment>;
using EfficiencyTable = AgentTaskStateTable<tags::Efficiency>;
/// z[m][s]: aggregate demand minus supply in share space.
using ExcessDemand = TaskStateTable<tags::Excess>;
/// W_c[m][s]: summed endowment shares of a coalition.
using CoalitionWealth = TaskStateTable<tags::CoalitionWealth>;

/// Largest |sum_n r[n][m][s] - 1| over all markets.
double max_clearing_error(const ShareProfile& shares);

}  // namespace stocore

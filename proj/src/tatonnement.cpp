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

#include "stocore/tatonnement.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "stocore/csv.hpp"

namespace stocore {

void AuctionConfig::validate() const {
  if (!std::isfinite(alpha) || alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  if (!std::isfinite(epsilon) || epsilon <= 0.0)
    throw std::invalid_argument("epsilon must be positive");
  if (max_iters == 0) throw std::invalid_argument("max_iters must be positive");
  if (initial_prices) initial_prices->require_positive();
}

ExcessDemand excess_demand(const UtilityModel& model, const EndowmentShares& endowment,
                           const PriceSystem& prices, ShareProfile* demands) {
  const std::size_t agents = model.agents(), tasks = model.tasks(), states = model.states();
  if (prices.tasks() != tasks || prices.states() != states)
    throw std::invalid_argument("price system shape does not match the scenario");
  prices.require_positive();

  ShareProfile local;
  ShareProfile& out = demands ? *demands : local;
  out = ShareProfile(agents, tasks, states);
  std::vector<double> own(tasks);
  for (std::size_t s = 0; s < states; ++s) {
    const std::vector<double> p = prices.state_slice(s);
    for (std::size_t n = 0; n < agents; ++n) {
      for (std::size_t m = 0; m < tasks; ++m) own[m] = endowment(n, m, s);
      const DemandResult d = demand(model, n, s, p, own);
      for (std::size_t m = 0; m < tasks; ++m) out(n, m, s) = d.shares[m];
    }
  }
  // agent order is fixed, so the aggregate is reproducible bit for bit
  ExcessDemand z(tasks, states);
  for (std::size_t m = 0; m < tasks; ++m)
    for (std::size_t s = 0; s < states; ++s) z(m, s) = out.column_sum(m, s) - 1.0;
  return z;
}

ExcessDemand excess_demand(const ValidatedScenario& scn, const PriceSystem& prices) {
  return excess_demand(UtilityModel(scn), endowment_shares(scn), prices);
}

PriceSystem price_update(const PriceSystem& prices, const ExcessDemand& excess, double alpha,
                         double floor) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  PriceSystem next = prices;
  for (std::size_t m = 0; m < prices.tasks(); ++m)
    for (std::size_t s = 0; s < prices.states(); ++s)
      next(m, s) = std::max(prices(m, s) + alpha * excess(m, s), floor);
  return next;
}

EquilibriumReport run_auction(const ValidatedScenario& scn, const AuctionConfig& cfg) {
  cfg.validate();
  const UtilityModel model(scn);
  const EndowmentShares endowment = endowment_shares(scn);

  PriceSystem prices = cfg.initial_prices.value_or(
      PriceSystem::uniform_ones(scn.tasks(), scn.states()));
  if (prices.tasks() != scn.tasks() || prices.states() != scn.states())
    throw std::invalid_argument("initial price shape does not match the scenario");

  EquilibriumReport report;
  for (std::size_t t = 0;; ++t) {
    ShareProfile demands;
    const ExcessDemand z = excess_demand(model, endowment, prices, &demands);

    TraceRow row;
    row.iteration = t;
    row.prices = prices;
    for (double v : z.values()) row.max_abs_excess = std::max(row.max_abs_excess, std::abs(v));
    for (std::size_t s = 0; s < scn.states(); ++s) row.walras_residual.push_back(
        prices.value(s, z.state_slice(s)));
    report.trace.push_back(row);

    report.shares = std::move(demands);
    report.raw_prices = prices;
    report.iterations = t;
    report.max_abs_excess = row.max_abs_excess;
    if (row.max_abs_excess <= cfg.epsilon) {
      report.converged = true;
      break;
    }
    if (t == cfg.max_iters) break;
    prices = price_update(prices, z, cfg.alpha);
  }
  report.prices = report.raw_prices.normalized();
  for (std::size_t n = 0; n < scn.agents(); ++n)
    report.expected_utility.push_back(model.expected_utility(n, report.shares));
  return report;
}

void write_trace_csv(std::ostream& os, const EquilibriumReport& report) {
  os << "iter,max_abs_z";
  if (!report.trace.empty()) {
    const PriceSystem& p = report.trace.front().prices;
    for (std::size_t m = 0; m < p.tasks(); ++m)
      for (std::size_t s = 0; s < p.states(); ++s) os << ",p_m" << m + 1 << "_s" << s + 1;
  }
  os << '\n';
  for (const TraceRow& row : report.trace) {
    os << row.iteration << ',' << csv::real(row.max_abs_excess);
    for (std::size_t m = 0; m < row.prices.tasks(); ++m)
      for (std::size_t s = 0; s < row.prices.states(); ++s) os << ',' << csv::real(row.prices(m, s));
    os << '\n';
  }
}

void write_allocation_csv(std::ostream& os, const EquilibriumReport& report) {
  os << "agent,task,state,share,price\n";
  const ShareProfile& r = report.shares;
  for (std::size_t n = 0; n < r.agents(); ++n)
    for (std::size_t m = 0; m < r.tasks(); ++m)
      for (std::size_t s = 0; s < r.states(); ++s)
        os << n + 1 << ',' << m + 1 << ',' << s + 1 << ',' << csv::real(r(n, m, s)) << ','
           << csv::real(report.prices(m, s)) << '\n';
}

}  // namespace stocore

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
#include <iosfwd>
#include <optional>
#include <vector>

#include "stocore/preference.hpp"
#include "stocore/prices.hpp"
#include "stocore/scenario.hpp"
#include "stocore/tables.hpp"

namespace stocore {

inline constexpr double kPriceFloor = 1e-6;

struct AuctionConfig {
  double alpha = 0.01;    // price adjustment factor
  double epsilon = 0.01;  // clearing threshold on max |z|
  std::size_t max_iters = 100000;
  std::optional<PriceSystem> initial_prices;  // uniform ones when empty

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

struct TraceRow {
  std::size_t iteration = 0;
  double max_abs_excess = 0.0;
  PriceSystem prices;                 // prices announced this round, unnormalized
  std::vector<double> walras_residual;  // p^(s) . z^(s) per state
};

struct EquilibriumReport {
  PriceSystem prices;      // final prices, normalized per state
  PriceSystem raw_prices;  // final prices as announced
  ShareProfile shares;     // demands at the final prices
  std::size_t iterations = 0;
  bool converged = false;
  double max_abs_excess = 0.0;
  std::vector<TraceRow> trace;
  std::vector<double> expected_utility;  // per agent, at `shares`
};

/// Aggregate share demand minus supply (one unit per market) at the given
/// prices. Demands are written to `demands` when provided.
ExcessDemand excess_demand(const UtilityModel& model, const EndowmentShares& endowment,
                           const PriceSystem& prices, ShareProfile* demands = nullptr);
ExcessDemand excess_demand(const ValidatedScenario& scn, const PriceSystem& prices);

/// p <- max(p + alpha z, floor), elementwise.
PriceSystem price_update(const PriceSystem& prices, const ExcessDemand& excess, double alpha,
                         double floor = kPriceFloor);

/// Synchronous announce / demand / adjust rounds until max |z| <= epsilon
/// or max_iters adjustments have been made.
EquilibriumReport run_auction(const ValidatedScenario& scn, const AuctionConfig& cfg);

/// CSV: iter, max_abs_z, then p_m<m>_s<s> for every market (1-based labels).
void write_trace_csv(std::ostream& os, const EquilibriumReport& report);
/// CSV: agent, task, state, share, price (normalized).
void write_allocation_csv(std::ostream& os, const EquilibriumReport& report);

}  // namespace stocore

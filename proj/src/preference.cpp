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

#include "stocore/preference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stocore {
namespace {

constexpr int kMaxBisection = 200;
constexpr double kShareTolerance = 1e-12;
constexpr double kMultiplierTolerance = 1e-12;

// Solves g'(r) = target on [0, 1], given g'(0) > target > g'(1). Newton
// steps are taken when they stay inside the bracket, bisection otherwise.
double solve_marginal(const ShareCurve& curve, double target) {
  double lo = 0.0;
  double hi = 1.0;
  double r = 0.5;
  for (int it = 0; it < kMaxBisection && hi - lo > kShareTolerance; ++it) {
    const double f = curve.marginal(r) - target;
    if (f == 0.0) return r;
    if (f > 0.0)
      lo = r;
    else
      hi = r;
    const double next = r - f / curve.curvature(r);
    if (next > lo && next < hi && std::abs(next - r) < 0.5 * (hi - lo)) {
      if (std::abs(next - r) <= 0.25 * kShareTolerance) return next;
      r = next;
    } else {
      r = 0.5 * (lo + hi);
    }
  }
  return r;
}

void shares_at(std::span<const ShareCurve* const> curves, std::span<const double> prices,
               double mu, std::span<const double> marginal_at_zero,
               std::span<const double> marginal_at_one, std::vector<double>& out) {
  for (std::size_t m = 0; m < curves.size(); ++m) {
    const double target = mu * prices[m];
    if (marginal_at_zero[m] <= target)
      out[m] = 0.0;
    else if (marginal_at_one[m] >= target)
      out[m] = 1.0;
    else
      out[m] = solve_marginal(*curves[m], target);
  }
}

double spend(std::span<const double> prices, std::span<const double> shares) {
  double total = 0.0;
  for (std::size_t m = 0; m < prices.size(); ++m) total += prices[m] * shares[m];
  return total;
}

}  // namespace

double task_utility(double rho, double load) {
  if (!std::isfinite(rho) || rho <= 0.0)
    throw std::invalid_argument("rho must be strictly positive and finite");
  if (!(load >= 0.0)) throw std::invalid_argument("load must be nonnegative");
  return -rho * std::expm1(-load / rho);
}

ShareCurve::ShareCurve(double rho, std::vector<ArrivalSpec> contributors)
    : rho_(rho), contributors_(std::move(contributors)) {
  if (!std::isfinite(rho_) || rho_ <= 0.0)
    throw std::invalid_argument("rho must be strictly positive and finite");
}

double ShareCurve::value(double share) const {
  double cumulant = 0.0;
  for (const ArrivalSpec& a : contributors_) cumulant += a.cumulant(-share / rho_);
  return -rho_ * std::expm1(cumulant);
}

double ShareCurve::marginal(double share) const {
  const double t = -share / rho_;
  double cumulant = 0.0;
  double slope = 0.0;
  for (const ArrivalSpec& a : contributors_) {
    cumulant += a.cumulant(t);
    slope += a.cumulant_slope(t);
  }
  return std::exp(cumulant) * slope;
}

double ShareCurve::curvature(double share) const {
  const double t = -share / rho_;
  double cumulant = 0.0;
  double slope = 0.0;
  double variance = 0.0;
  for (const ArrivalSpec& a : contributors_) {
    cumulant += a.cumulant(t);
    slope += a.cumulant_slope(t);
    variance += a.cumulant_curvature(t);
  }
  return -std::exp(cumulant) * (slope * slope + variance) / rho_;
}

UtilityModel::UtilityModel(const ValidatedScenario& scn)
    : agents_(scn.agents()), tasks_(scn.tasks()), states_(scn.states()) {
  curves_.reserve(agents_ * tasks_ * states_);
  for (std::size_t n = 0; n < agents_; ++n)
    for (std::size_t m = 0; m < tasks_; ++m)
      for (std::size_t s = 0; s < states_; ++s)
        curves_.emplace_back(scn.rho(n, m, s), scn.market_arrivals(m, s));
  beliefs_.reserve(agents_ * states_);
  for (std::size_t n = 0; n < agents_; ++n)
    for (std::size_t s = 0; s < states_; ++s) beliefs_.push_back(scn.belief(n, s));
}

double UtilityModel::state_utility(std::size_t n, std::size_t s,
                                   const ShareProfile& shares) const {
  double total = 0.0;
  for (std::size_t m = 0; m < tasks_; ++m) total += curve(n, m, s).value(shares(n, m, s));
  return total;
}

double UtilityModel::expected_utility(std::size_t n, const ShareProfile& shares) const {
  double total = 0.0;
  for (std::size_t s = 0; s < states_; ++s) total += belief(n, s) * state_utility(n, s, shares);
  return total;
}

ShareUtility composite_share_utility(const ValidatedScenario& scn, std::size_t n, std::size_t m,
                                     std::size_t s, double share) {
  if (!(share >= 0.0 && share <= 1.0)) throw std::invalid_argument("share must lie in [0, 1]");
  return ShareCurve(scn.rho(n, m, s), scn.market_arrivals(m, s)).evaluate(share);
}

double expected_utility(const ValidatedScenario& scn, std::size_t n, const ShareProfile& shares) {
  return UtilityModel(scn).expected_utility(n, shares);
}

DemandResult solve_demand(std::span<const ShareCurve* const> curves,
                          std::span<const double> prices, double budget) {
  const std::size_t tasks = curves.size();
  if (prices.size() != tasks) throw std::invalid_argument("one price per task required");
  for (double p : prices)
    if (!std::isfinite(p) || p <= 0.0)
      throw std::invalid_argument("prices must be finite and strictly positive");

  DemandResult result;
  result.shares.assign(tasks, 0.0);
  if (!std::isfinite(budget)) throw DemandError("budget is not finite");
  if (budget <= 0.0) {
    result.budget_slack = budget;
    return result;
  }

  const double full_cost = spend(prices, std::vector<double>(tasks, 1.0));
  if (full_cost <= budget) {
    // the cap binds before the budget does
    result.shares.assign(tasks, 1.0);
    result.budget_slack = budget - full_cost;
    return result;
  }

  std::vector<double> at_zero(tasks), at_one(tasks);
  double mu_hi = 0.0;
  for (std::size_t m = 0; m < tasks; ++m) {
    at_zero[m] = curves[m]->marginal(0.0);
    at_one[m] = curves[m]->marginal(1.0);
    mu_hi = std::max(mu_hi, at_zero[m] / prices[m]);
  }
  // spend(mu) is nonincreasing; spend(0) = full_cost > budget, spend(mu_hi) = 0.
  // Bracketed Newton on spend(mu) = budget, bisecting whenever the step leaves
  // the bracket.
  double mu_lo = 0.0;
  double mu = 0.5 * mu_hi;
  std::vector<double> trial(tasks);
  int it = 0;
  for (; it < kMaxBisection && mu_hi - mu_lo > kMultiplierTolerance * std::max(1.0, mu_hi);
       ++it) {
    shares_at(curves, prices, mu, at_zero, at_one, trial);
    const double gap = spend(prices, trial) - budget;
    if (gap > 0.0)
      mu_lo = mu;
    else
      mu_hi = mu;
    double slope = 0.0;
    for (std::size_t m = 0; m < tasks; ++m)
      if (trial[m] > 0.0 && trial[m] < 1.0)
        slope += prices[m] * prices[m] / curves[m]->curvature(trial[m]);
    const double step = slope < 0.0 ? -gap / slope : 0.0;
    if (std::abs(gap) <= kShareTolerance * budget) {
      if (gap <= 0.0) break;
      // close the bracket from above so mu_hi is feasible and tight
      mu = std::min(mu_hi, mu + std::max(2.0 * step, 1e-15 * mu));
      continue;
    }
    const double next = mu + step;
    if (slope < 0.0 && next > mu_lo && next < mu_hi)
      mu = next;
    else
      mu = 0.5 * (mu_lo + mu_hi);
  }
  shares_at(curves, prices, mu_hi, at_zero, at_one, result.shares);
  double slack = budget - spend(prices, result.shares);
  if (!std::isfinite(slack) || slack < -1e-12 * budget)
    throw DemandError("demand bisection failed to bracket the budget after " +
                      std::to_string(it) + " iterations");

  // Hand the residual (solver-tolerance sized) to the coordinates that are not
  // capped, interior ones first, so the budget binds to rounding.
  for (int pass = 0; pass < 2 && slack > 0.0; ++pass)
    for (std::size_t m = 0; m < tasks && slack > 0.0; ++m) {
      const bool interior = result.shares[m] > 0.0 && result.shares[m] < 1.0;
      if ((pass == 0) != interior) continue;
      const double add = std::min(slack / prices[m], 1.0 - result.shares[m]);
      result.shares[m] += add;
      slack -= add * prices[m];
    }
  result.multiplier = mu_hi;
  result.budget_slack = budget - spend(prices, result.shares);
  return result;
}

DemandResult demand(const UtilityModel& model, std::size_t n, std::size_t s,
                    std::span<const double> prices, std::span<const double> endowment) {
  const std::size_t tasks = model.tasks();
  if (endowment.size() != tasks) throw std::invalid_argument("one endowment share per task required");
  std::vector<const ShareCurve*> curves(tasks);
  for (std::size_t m = 0; m < tasks; ++m) curves[m] = &model.curve(n, m, s);
  double budget = 0.0;
  for (std::size_t m = 0; m < tasks; ++m) budget += prices[m] * endowment[m];
  try {
    return solve_demand(curves, prices, budget);
  } catch (const DemandError& e) {
    throw DemandError(std::string(e.what()) + " (agent " + std::to_string(n + 1) + ", state " +
                      std::to_string(s + 1) + ")");
  }
}

DemandResult demand(const ValidatedScenario& scn, std::size_t n, std::size_t s,
                    std::span<const double> prices, std::span<const double> endowment) {
  return demand(UtilityModel(scn), n, s, prices, endowment);
}

}  // namespace stocore

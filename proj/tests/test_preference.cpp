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

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "stocore/builtin_scenarios.hpp"
#include "stocore/certainty_equivalent.hpp"
#include "stocore/preference.hpp"
#include "stocore/seeding.hpp"
#include "stocore/tatonnement.hpp"

using namespace stocore;

TEST_CASE("task utility values") {
  CHECK(task_utility(1.0, 0.0) == 0.0);
  CHECK(task_utility(0.9, 1.0) == doctest::Approx(0.603720).epsilon(1e-5));
  CHECK(task_utility(0.4, 1.0) == doctest::Approx(0.367166).epsilon(1e-5));
  CHECK_THROWS_AS(task_utility(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(task_utility(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("utility grows with the performance index") {
  for (double x : {0.1, 1.0, 5.0}) {
    double prev = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double u = task_utility(0.05 * k, x);
      CHECK(u > prev);
      CHECK(u <= 0.05 * k);
      prev = u;
    }
  }
}

TEST_CASE("share curve: endpoints, derivative, concavity") {
  const ShareCurve single(1.0, {ArrivalSpec::exponential(1.0)});
  CHECK(single.value(0.0) == 0.0);
  CHECK(single.value(1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(single.value(1.0) == doctest::Approx(task_utility(1.0, std::log(2.0))).epsilon(1e-14));

  const std::vector<ArrivalSpec> market{ArrivalSpec::exponential(1.0), ArrivalSpec::exponential(2.0),
                                        ArrivalSpec::exponential(4.0)};
  const ShareCurve g(0.7, market);
  CHECK(g.marginal(0.0) == doctest::Approx(1.0 + 0.5 + 0.25).epsilon(1e-14));
  const double h0 = 1e-6;
  CHECK((g.value(h0) - g.value(0.0)) / h0 == doctest::Approx(g.marginal(0.0)).epsilon(1e-5));
  for (int k = 1; k < 100; ++k) {
    const double r = 0.01 * k, h = 1e-5;
    CHECK(std::abs((g.value(r + h) - g.value(r - h)) / (2 * h) - g.marginal(r)) <= 1e-6);
    CHECK(g.value(r + h) - 2 * g.value(r) + g.value(r - h) <= 0.0);
    CHECK(g.marginal(r) > 0.0);
    CHECK(g.curvature(r) < 0.0);
  }

  // closed form for exponential contributors
  const double r = 0.37, rho = 0.7;
  double prod = 1.0, sum = 0.0;
  for (double l : {1.0, 2.0, 4.0}) {
    prod *= l * rho / (l * rho + r);
    sum += 1.0 / (l * rho + r);
  }
  CHECK(g.value(r) == doctest::Approx(rho * (1.0 - prod)).epsilon(1e-14));
  CHECK(g.marginal(r) == doctest::Approx(rho * prod * sum).epsilon(1e-13));
}

TEST_CASE("share curve equals utility of the certainty equivalent for every kind") {
  const std::vector<ArrivalSpec> market{ArrivalSpec::poisson(1.5), ArrivalSpec::truncated_normal(0.8, 0.4),
                                        ArrivalSpec::deterministic(0.3)};
  const ShareCurve g(1.3, market);
  for (double r : {0.0, 0.2, 0.9})
    CHECK(g.value(r) == doctest::Approx(task_utility(1.3, ce_generic(1.3, market, r))).epsilon(1e-12));
}

TEST_CASE("expected utility") {
  const ValidatedScenario toy = validate_scenario(toy_sbs_scenario());
  const ShareProfile zero(2, 2, 2);
  CHECK(expected_utility(toy, 0, zero) == 0.0);

  const ShareProfile full(2, 2, 2, 1.0);
  double manual = 0.0;
  for (std::size_t s = 0; s < 2; ++s)
    manual += toy.belief(0, s) * (composite_share_utility(toy, 0, 0, s, 1.0).value +
                                  composite_share_utility(toy, 0, 1, s, 1.0).value);
  CHECK(expected_utility(toy, 0, full) == doctest::Approx(manual).epsilon(1e-14));

  Scenario raw = general_example_scenario();
  raw.belief(1, 0) = 0.0;
  raw.belief(1, 1) = 1.0;
  raw.belief(1, 2) = 0.0;
  const ValidatedScenario scn = validate_scenario(raw);
  const UtilityModel model(scn);
  const ShareProfile quarter(4, 3, 3, 0.25);
  CHECK(model.expected_utility(1, quarter) == model.state_utility(1, 1, quarter));
}

TEST_CASE("demand: single good, symmetric goods, zero budget") {
  const ShareCurve g(0.8, {ArrivalSpec::exponential(1.0), ArrivalSpec::exponential(2.0)});
  const ShareCurve* one[] = {&g};
  for (double p : {0.3, 1.0, 4.0})
    for (double w : {0.1, 0.5, 0.9}) {
      const double price[] = {p};
      const DemandResult d = solve_demand(one, price, p * w);
      CHECK(d.shares[0] == doctest::Approx(w).epsilon(1e-12));
    }

  const ShareCurve* two[] = {&g, &g};
  const double equal[] = {1.7, 1.7};
  const DemandResult d = solve_demand(two, equal, 1.7);
  CHECK(d.shares[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(d.shares[1] == doctest::Approx(0.5).epsilon(1e-9));

  const DemandResult none = solve_demand(two, equal, 0.0);
  CHECK(none.shares[0] == 0.0);
  CHECK(none.shares[1] == 0.0);

  const DemandResult rich = solve_demand(two, equal, 10.0);
  CHECK(rich.shares[0] == 1.0);
  CHECK(rich.multiplier == 0.0);

  const double bad[] = {1.0, 0.0};
  CHECK_THROWS_AS(solve_demand(two, bad, 1.0), std::invalid_argument);
}

TEST_CASE("demand: KKT conditions, budget exhaustion, grid oracle") {
  const ValidatedScenario scn = validate_scenario(general_example_scenario());
  const UtilityModel model(scn);
  const EndowmentShares w = endowment_shares(scn);
  auto rng = make_stream(17, "demand-test");
  std::uniform_real_distribution<double> price(0.1, 6.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = trial % 4, s = (trial / 4) % 3;
    const std::vector<double> p{price(rng), price(rng), price(rng)};
    const std::vector<double> endow{w(n, 0, s), w(n, 1, s), w(n, 2, s)};
    const DemandResult d = demand(model, n, s, p, endow);
    double budget = 0.0, spent = 0.0;
    for (std::size_t m = 0; m < 3; ++m) {
      budget += p[m] * endow[m];
      spent += p[m] * d.shares[m];
    }
    CHECK(spent <= budget + 1e-9);
    CHECK(std::abs(d.multiplier * d.budget_slack) <= 1e-8);
    if (d.multiplier > 0.0) CHECK(std::abs(spent - budget) <= 1e-8);
    for (std::size_t m = 0; m < 3; ++m) {
      const double gp = model.curve(n, m, s).marginal(d.shares[m]);
      const double target = d.multiplier * p[m];
      if (d.shares[m] <= 0.0)
        CHECK(gp <= target * (1 + 1e-9));
      else if (d.shares[m] >= 1.0)
        CHECK(gp >= target * (1 - 1e-9));
      else
        CHECK(gp == doctest::Approx(target).epsilon(1e-7));
    }
  }

  // agents 1 and 2, tasks 1 and 2, state 1, unit prices
  for (std::size_t n : {0, 1}) {
    const ShareCurve* curves[] = {&model.curve(n, 0, 0), &model.curve(n, 1, 0)};
    const double p[] = {1.0, 1.0};
    const double budget = w(n, 0, 0) + w(n, 1, 0);
    const DemandResult d = solve_demand(curves, p, budget);
    double best = -1.0, b0 = 0.0, b1 = 0.0;
    for (int i = 0; i <= 1000; ++i)
      for (int j = 0; j <= 1000; ++j) {
        const double r0 = 1e-3 * i, r1 = 1e-3 * j;
        if (r0 + r1 > budget) break;
        const double v = curves[0]->value(r0) + curves[1]->value(r1);
        if (v > best) {
          best = v;
          b0 = r0;
          b1 = r1;
        }
      }
    CHECK(std::abs(d.shares[0] - b0) <= 1e-2);
    CHECK(std::abs(d.shares[1] - b1) <= 1e-2);
  }
}

TEST_CASE("demand ignores beliefs") {
  Scenario raw = general_example_scenario();
  const ValidatedScenario a = validate_scenario(raw);
  raw.belief(2, 0) = 0.05;
  raw.belief(2, 1) = 0.05;
  raw.belief(2, 2) = 0.9;
  const ValidatedScenario b = validate_scenario(raw);
  const EndowmentShares w = endowment_shares(a);
  const std::vector<double> p{1.3, 0.6, 2.2};
  for (std::size_t s = 0; s < 3; ++s) {
    const std::vector<double> endow{w(2, 0, s), w(2, 1, s), w(2, 2, s)};
    CHECK(demand(a, 2, s, p, endow).shares == demand(b, 2, s, p, endow).shares);
  }
}

namespace {

// Smallest change in aggregate demand for l != k after p_k *= 1.1, over
// every state and k.
double worst_cross_effect(const UtilityModel& model, const EndowmentShares& w, const PriceSystem& p) {
  ShareProfile before;
  excess_demand(model, w, p, &before);
  double worst = 0.0;
  for (std::size_t s = 0; s < p.states(); ++s)
    for (std::size_t k = 0; k < p.tasks(); ++k) {
      PriceSystem raised = p;
      raised(k, s) *= 1.1;
      ShareProfile after;
      excess_demand(model, w, raised, &after);
      for (std::size_t l = 0; l < p.tasks(); ++l)
        if (l != k) worst = std::min(worst, after.column_sum(l, s) - before.column_sum(l, s));
    }
  return worst;
}

}  // namespace

TEST_CASE("aggregate demand: gross substitutes near equilibrium, not globally") {
  const ValidatedScenario scn = validate_scenario(general_example_scenario());
  const UtilityModel model(scn);
  const EndowmentShares w = endowment_shares(scn);
  const EquilibriumReport eq = run_auction(scn, AuctionConfig{});
  auto rng = make_stream(23, "gross-substitutes-test");
  std::uniform_real_distribution<double> near(1.0 / 1.5, 1.5), far(0.2, 5.0);
  CHECK(worst_cross_effect(model, w, eq.raw_prices) >= -1e-9);
  for (int trial = 0; trial < 50; ++trial) {
    PriceSystem p = eq.raw_prices;
    for (double& v : p.values()) v *= near(rng);
    CHECK(worst_cross_effect(model, w, p) >= -1e-9);
  }
  // a net buyer with inelastic demand spends more on a dearer good and cuts
  // the others, and far from equilibrium this shows up in the aggregate
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    PriceSystem p(3, 3);
    for (double& v : p.values()) v = far(rng);
    worst = std::min(worst, worst_cross_effect(model, w, p));
  }
  CHECK(worst < -1e-3);
}

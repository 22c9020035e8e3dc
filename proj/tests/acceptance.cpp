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

// Acceptance suite: one PASS/FAIL line per criterion. With no arguments every
// criterion runs; otherwise only the listed numbers. Exit status is nonzero
// when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stocore/baselines.hpp"
#include "stocore/builtin_scenarios.hpp"
#include "stocore/certainty_equivalent.hpp"
#include "stocore/core_analysis.hpp"
#include "stocore/preference.hpp"
#include "stocore/seeding.hpp"
#include "stocore/tatonnement.hpp"

using namespace stocore;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class... Args>
std::string str(const Args&... args) {
  std::ostringstream os;
  os.precision(6);
  (os << ... << args);
  return os.str();
}

ValidatedScenario general() { return validate_scenario(general_example_scenario()); }

AuctionConfig default_config() {
  AuctionConfig cfg;
  cfg.alpha = 0.01;
  cfg.epsilon = 0.01;
  return cfg;
}

Outcome ce_closed_form_vs_oracle() {
  Stopwatch clock;
  auto rng = make_stream(kSeed, "acceptance-ce");
  std::uniform_real_distribution<double> rho_dist(0.1, 2.0), rate_dist(0.5, 4.0), share_dist(0.05, 1.0);
  std::uniform_int_distribution<int> len_dist(1, 4);
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < 50; ++i) {
    const double rho = rho_dist(rng);
    const double r = share_dist(rng);
    std::vector<double> rates(static_cast<std::size_t>(len_dist(rng)));
    std::vector<ArrivalSpec> specs;
    for (double& l : rates) {
      l = rate_dist(rng);
      specs.push_back(ArrivalSpec::exponential(l));
    }
    const double closed = ce_exponential_load(rho, rates, r);
    const MonteCarloEstimate mc = mc_ce_oracle(rho, specs, r, 1'000'000, derive_seed(kSeed, "ce", {std::uint64_t(i)}));
    const double z = std::abs(closed - mc.value) / mc.std_error;
    worst = std::max(worst, z);
    if (z > 3.0) ++failures;
  }
  const double t = clock.seconds();
  return {failures == 0 && t < 60.0,
          str("50 triples, worst deviation ", worst, " standard errors, ", failures,
              " outside 3 SE, ", t, " s")};
}

Outcome ce_axioms() {
  const std::vector<std::pair<std::string, ArrivalSpec>> specs{
      {"exponential", ArrivalSpec::exponential(1.5)},
      {"poisson", ArrivalSpec::poisson(2.0)},
      {"deterministic", ArrivalSpec::deterministic(1.25)}};
  const std::vector<double> rhos{0.3, 1.0, 2.5};
  int checks = 0, failures = 0;
  std::string first_failure;
  const auto check = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first_failure = what;
  };

  for (const auto& [name, spec] : specs) {
    const std::vector<ArrivalSpec> one{spec};
    for (double rho : rhos) {
      const std::string tag = name + " rho=" + str(rho);
      // (a)/(b): CE strictly increasing in r, and expected utility orders the
      // same way as the CE
      double prev_ce = 0.0, prev_u = 0.0;
      const ShareCurve curve(rho, one);
      for (int k = 1; k <= 10; ++k) {
        const double r = 0.1 * k;
        const double ce = ce_generic(rho, one, r);
        const double eu = curve.value(r);
        check(ce > prev_ce && eu > prev_u, tag + " monotone at r=" + str(r));
        check(std::abs(task_utility(rho, ce) - eu) <= 1e-12, tag + " indifference at r=" + str(r));
        check(ce <= r * spec.mean() * (1.0 + 1e-12), tag + " Jensen at r=" + str(r));
        if (spec.kind() == ArrivalSpec::Kind::Deterministic)
          check(std::abs(ce - r * spec.mean()) <= 1e-12, tag + " deterministic equality");
        else
          check(ce < r * spec.mean(), tag + " strict risk aversion");
        prev_ce = ce;
        prev_u = eu;
      }

      // (c): a deterministic constant is its own equivalent
      for (double k : {0.0, 0.5, 3.0}) {
        const std::vector<ArrivalSpec> constant{ArrivalSpec::deterministic(k)};
        check(std::abs(ce_generic(rho, constant, 1.0) - k) <= 1e-12, tag + " constant " + str(k));
        const std::vector<double> sample(16, k);
        check(ce_of_rewards(rho, sample).value == k, tag + " constant sample " + str(k));
      }

      // (d) and (e) on sampled rewards x = r Q
      auto rng = make_stream(kSeed, "acceptance-axioms", {checks + 0ull});
      std::vector<double> draws(200'000);
      const double r = 0.7;
      for (double& x : draws) x = r * spec.sample(rng);
      const double d = ce_generic(rho, one, r);
      std::vector<double> shifted(draws.size());
      std::transform(draws.begin(), draws.end(), shifted.begin(), [d](double x) { return x - d; });
      const MonteCarloEstimate centered = ce_of_rewards(rho, shifted);
      check(std::abs(centered.value) <= 3.0 * centered.std_error + 1e-12, tag + " zero after shift by d");

      const MonteCarloEstimate base = ce_of_rewards(rho, draws);
      double prev = -1.0;
      for (double k : {0.0, 0.25, 1.0, 4.0}) {
        std::vector<double> plus(draws.size());
        std::transform(draws.begin(), draws.end(), plus.begin(), [k](double x) { return x + k; });
        const double v = ce_of_rewards(rho, plus).value;
        check(k == 0.0 || v > prev, tag + " shift ordering at k=" + str(k));
        check(std::abs(v - (base.value + k)) <= 1e-9 * (1.0 + k), tag + " shift translation at k=" + str(k));
        prev = v;
      }
    }
  }
  return {failures == 0, str(checks, " checks over exponential, poisson, deterministic; ", failures,
                             " failed", failures ? ", first: " + first_failure : std::string())};
}

Outcome market_clearing() {
  const ValidatedScenario scn = general();
  Stopwatch clock;
  const EquilibriumReport eq = run_auction(scn, default_config());
  const double t = clock.seconds();
  const ExcessDemand z = excess_demand(scn, eq.raw_prices);
  double worst = 0.0;
  for (double v : z.values()) worst = std::max(worst, std::abs(v));
  const bool ok = eq.converged && worst <= 0.01 && z.values().size() == 9 && eq.iterations >= 10 &&
                  eq.iterations <= 1000 && t < 10.0;
  return {ok, str("converged=", eq.converged, ", ", eq.iterations, " iterations, max |z| = ", worst,
                  " over ", z.values().size(), " markets, ", t, " s")};
}

Outcome walras_law() {
  const EquilibriumReport eq = run_auction(general(), default_config());
  double worst = 0.0;
  for (const TraceRow& row : eq.trace)
    for (double v : row.walras_residual) worst = std::max(worst, std::abs(v));
  return {worst <= 1e-8 && !eq.trace.empty(),
          str("max |p.z| = ", worst, " over ", eq.trace.size(), " iterations")};
}

Outcome uniqueness() {
  const ValidatedScenario scn = general();
  auto rng = make_stream(kSeed, "acceptance-uniqueness");
  std::uniform_real_distribution<double> price(0.2, 5.0);
  AuctionConfig cfg = default_config();
  cfg.epsilon = 1e-6;
  std::vector<EquilibriumReport> runs;
  for (int i = 0; i < 5; ++i) {
    PriceSystem start(scn.tasks(), scn.states());
    for (double& p : start.values()) p = price(rng);
    cfg.initial_prices = start;
    runs.push_back(run_auction(scn, cfg));
  }
  double price_gap = 0.0, share_gap = 0.0;
  bool converged = true;
  for (const EquilibriumReport& r : runs) {
    converged = converged && r.converged;
    for (std::size_t i = 0; i < r.prices.values().size(); ++i)
      price_gap = std::max(price_gap, std::abs(r.prices.values()[i] - runs[0].prices.values()[i]));
    for (std::size_t i = 0; i < r.shares.values().size(); ++i)
      share_gap = std::max(share_gap, std::abs(r.shares.values()[i] - runs[0].shares.values()[i]));
  }
  return {converged && price_gap <= 1e-3 && share_gap <= 1e-3,
          str("5 random starts (epsilon 1e-6), all converged=", converged,
              ", max normalized price gap ", price_gap, ", max share gap ", share_gap)};
}

Outcome ssc_membership() {
  const ValidatedScenario scn = general();
  const EquilibriumReport eq = run_auction(scn, default_config());
  Stopwatch clock;
  const SscReport report = check_ssc(scn, eq.shares);
  const double t = clock.seconds();
  std::size_t programs = report.ex_ante.size();
  for (const auto& s : report.ex_post) programs += s.size();
  std::string worst;
  if (report.worst_offender)
    worst = str(", largest relative improvement ", report.worst_offender->result.improvement,
                " for agent ", report.worst_offender->target + 1, " in ",
                report.worst_offender->coalition.label(), " ", report.worst_offender->mode.label());
  double strong_max = -1.0;
  std::string strong_where;
  for (const StrongEntry& e : report.strong)
    if (e.result.min_gain > strong_max) {
      strong_max = e.result.min_gain;
      strong_where = e.coalition.label() + " " + e.mode.label();
    }
  return {report.verdict && t < 120.0,
          str(programs, " target programs, weak predicate ", report.weak_verdict ? "holds" : "violated",
              ", strong predicate ", report.strong_verdict ? "holds" : "violated",
              ", inconclusive=", report.inconclusive, worst, ", largest all-member gain ", strong_max,
              " in ", strong_where, ", ", t, " s")};
}

Outcome indifference() {
  const ValidatedScenario scn = general();
  const EquilibriumReport eq = run_auction(scn, default_config());
  const auto rows = simulate_realized_utilities(scn, eq.shares, 100'000, kSeed);
  double worst = 0.0;
  for (const RealizedUtility& r : rows)
    worst = std::max(worst, std::abs(r.mean - r.predicted) / r.predicted);
  return {worst <= 0.01, str("100000 draws, worst relative gap ", worst)};
}

Outcome welfare_ordering() {
  const ValidatedScenario scn = general();
  const EquilibriumReport eq = run_auction(scn, default_config());
  const WelfareComparison report =
      welfare_report(scn, {{AllocationMethod::Walrasian, eq.shares}, weighted_matching_allocation(scn),
                           random_allocation(scn, scn->seed), equal_allocation(scn)});
  const double w = report.welfare(AllocationMethod::Walrasian);
  const double wm = report.welfare(AllocationMethod::WeightedMatching);
  const double rnd = report.welfare(AllocationMethod::Random);
  const double eql = report.welfare(AllocationMethod::Equal);
  const Matching m = weighted_matching(scn, 0);
  const bool weight_ok = std::abs(m.weight - 2.23) <= 1e-9;
  const bool order_ok = w >= wm && wm >= std::min(rnd, eql);
  return {weight_ok && order_ok,
          str("welfare walrasian ", w, ", matching ", wm, ", random ", rnd, ", equal ", eql,
              "; ordering ", order_ok ? "holds" : "violated", "; state-1 matching weight ", m.weight)};
}

Outcome toy_scenario() {
  const ValidatedScenario scn = validate_scenario(toy_sbs_scenario());
  const EquilibriumReport eq = run_auction(scn, default_config());
  const ShareProfile& r = eq.shares;
  const bool ok = eq.converged && r(0, 0, 0) > 0.5 && r(0, 0, 1) > 0.5 && r(0, 1, 0) > 0.5 &&
                  r(1, 1, 1) > 0.5;
  return {ok, str("SBS1 transmission (", r(0, 0, 0), ", ", r(0, 0, 1), "), SBS1 computation state 1 ",
                  r(0, 1, 0), ", SBS2 computation state 2 ", r(1, 1, 1))};
}

Outcome demand_oracle() {
  Scenario raw = Scenario::with_shape(4, 2, 3);
  const Scenario full = general_example_scenario();
  for (std::size_t n = 0; n < 4; ++n) {
    for (std::size_t m = 0; m < 2; ++m)
      for (std::size_t s = 0; s < 3; ++s) {
        raw.rho(n, m, s) = full.rho(n, m, s);
        raw.arrival_at(n, m, s) = full.arrival_at(n, m, s);
      }
    for (std::size_t s = 0; s < 3; ++s) raw.belief(n, s) = full.belief(n, s);
  }
  const ValidatedScenario scn = validate_scenario(raw);
  const UtilityModel model(scn);
  const EndowmentShares w = endowment_shares(scn);
  auto rng = make_stream(kSeed, "acceptance-demand");
  std::uniform_int_distribution<std::size_t> agent(0, 3), state(0, 2);
  std::uniform_real_distribution<double> price(0.2, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = agent(rng), s = state(rng);
    const std::vector<double> p{price(rng), price(rng)};
    const std::vector<double> endow{w(n, 0, s), w(n, 1, s)};
    const DemandResult d = demand(model, n, s, p, endow);
    const double budget = p[0] * endow[0] + p[1] * endow[1];
    const ShareCurve& g0 = model.curve(n, 0, s);
    const ShareCurve& g1 = model.curve(n, 1, s);
    double best = -1.0, b0 = 0.0, b1 = 0.0;
    for (int i0 = 0; i0 <= 1000; ++i0)
      for (int i1 = 0; i1 <= 1000; ++i1) {
        const double r0 = 1e-3 * i0, r1 = 1e-3 * i1;
        if (p[0] * r0 + p[1] * r1 > budget) continue;
        const double v = g0.value(r0) + g1.value(r1);
        if (v > best) {
          best = v;
          b0 = r0;
          b1 = r1;
        }
      }
    worst = std::max({worst, std::abs(d.shares[0] - b0), std::abs(d.shares[1] - b1)});
  }
  return {worst <= 1e-2, str("20 instances, worst coordinate gap to grid optimum ", worst)};
}

Outcome gross_substitutes() {
  const ValidatedScenario scn = general();
  const UtilityModel model(scn);
  const EndowmentShares w = endowment_shares(scn);
  const EquilibriumReport eq = run_auction(scn, default_config());
  double worst = 0.0;
  int cases = 0;
  for (const PriceSystem& base : {PriceSystem::uniform_ones(scn.tasks(), scn.states()), eq.raw_prices}) {
    ShareProfile before;
    excess_demand(model, w, base, &before);
    for (std::size_t s = 0; s < scn.states(); ++s)
      for (std::size_t k = 0; k < scn.tasks(); ++k) {
        PriceSystem raised = base;
        raised(k, s) *= 1.1;
        ShareProfile after;
        excess_demand(model, w, raised, &after);
        for (std::size_t l = 0; l < scn.tasks(); ++l) {
          if (l == k) continue;
          ++cases;
          worst = std::min(worst, after.column_sum(l, s) - before.column_sum(l, s));
        }
      }
  }
  return {worst >= -1e-9, str(cases, " cross effects at unit and equilibrium prices, smallest change ", worst)};
}

Outcome belief_invariance() {
  const Scenario base = general_example_scenario();
  const EquilibriumReport ref = run_auction(validate_scenario(base), default_config());
  auto rng = make_stream(kSeed, "acceptance-beliefs");
  std::exponential_distribution<double> gamma1(1.0);
  double worst = 0.0;
  for (std::size_t n = 0; n < base.agents; ++n) {
    Scenario scn = base;
    double total = 0.0;
    for (std::size_t s = 0; s < scn.states; ++s) total += (scn.belief(n, s) = gamma1(rng) + 1e-3);
    for (std::size_t s = 0; s < scn.states; ++s) scn.belief(n, s) /= total;
    const EquilibriumReport eq = run_auction(validate_scenario(scn), default_config());
    for (std::size_t i = 0; i < eq.shares.values().size(); ++i)
      worst = std::max(worst, std::abs(eq.shares.values()[i] - ref.shares.values()[i]));
  }
  return {worst <= 1e-9, str("4 perturbed belief vectors, max share change ", worst)};
}

Outcome fuzz_ssc() {
  auto rng = make_stream(kSeed, "acceptance-fuzz");
  std::uniform_int_distribution<std::size_t> agents(1, 4), tasks(1, 3), states(1, 3);
  std::uniform_real_distribution<double> rho(0.1, 1.0), rate(0.5, 4.0);
  std::exponential_distribution<double> gamma1(1.0);
  int converged = 0, passed = 0, single_state = 0, single_state_passed = 0;
  std::vector<std::string> failures;
  Stopwatch clock;
  for (int i = 0; i < 25; ++i) {
    Scenario raw = Scenario::with_shape(agents(rng), tasks(rng), states(rng));
    raw.seed = derive_seed(kSeed, "fuzz-scenario", {std::uint64_t(i)});
    for (std::size_t n = 0; n < raw.agents; ++n) {
      for (std::size_t m = 0; m < raw.tasks; ++m)
        for (std::size_t s = 0; s < raw.states; ++s) {
          raw.rho(n, m, s) = rho(rng);
          raw.arrival_at(n, m, s) = ArrivalSpec::exponential(rate(rng));
        }
      double total = 0.0;
      for (std::size_t s = 0; s < raw.states; ++s) total += (raw.belief(n, s) = gamma1(rng) + 1e-3);
      for (std::size_t s = 0; s < raw.states; ++s) raw.belief(n, s) /= total;
    }
    const ValidatedScenario scn = validate_scenario(raw);
    const EquilibriumReport eq = run_auction(scn, default_config());
    if (!eq.converged) continue;
    ++converged;
    const SscReport report = check_ssc(scn, eq.shares);
    single_state += scn.states() == 1;
    single_state_passed += scn.states() == 1 && report.verdict;
    if (report.verdict)
      ++passed;
    else
      failures.push_back(str("#", i, " (N", scn.agents(), " M", scn.tasks(), " S", scn.states(), ")"));
  }
  std::string listed;
  for (const std::string& f : failures) listed += " " + f;
  return {converged > 0 && passed == converged,
          str(converged, " of 25 auctions converged, ", passed, " passed the core check (", single_state_passed, " of ", single_state,
              " single-state cases), ", clock.seconds(),
              " s", failures.empty() ? std::string() : "; failing:" + listed)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "certainty equivalence closed form vs Monte Carlo", ce_closed_form_vs_oracle},
      {2, "certainty equivalence axioms", ce_axioms},
      {3, "market clearing on general-example", market_clearing},
      {4, "Walras' law along the auction trace", walras_law},
      {5, "equilibrium uniqueness from random starts", uniqueness},
      {6, "strong sequential core membership", ssc_membership},
      {7, "indifference between stochastic and equivalent payoff", indifference},
      {8, "welfare ordering and matching weight", welfare_ordering},
      {9, "toy scenario allocation pattern", toy_scenario},
      {10, "demand solver vs grid search", demand_oracle},
      {11, "gross substitutes", gross_substitutes},
      {12, "belief invariance of the equilibrium", belief_invariance},
      {13, "core membership on random scenarios", fuzz_ssc},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  bool all_pass = true;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && outcome.pass;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name
              << "): " << outcome.detail << std::endl;
  }
  return all_pass ? EXIT_SUCCESS : EXIT_FAILURE;
}

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

#include "stocore/scenario.hpp"

#include <cmath>
#include <sstream>

#include "stocore/certainty_equivalent.hpp"

namespace stocore {
namespace {

std::string at(std::size_t n, std::size_t m, std::size_t s) {
  std::ostringstream os;
  os << " (agent " << n + 1 << ", task " << m + 1 << ", state " << s + 1 << ")";
  return os.str();
}

}  // namespace

Scenario Scenario::with_shape(std::size_t agents, std::size_t tasks, std::size_t states) {
  Scenario scn;
  scn.agents = agents;
  scn.tasks = tasks;
  scn.states = states;
  scn.rho = EfficiencyTable(agents, tasks, states, 1.0);
  scn.arrival.assign(agents * tasks * states, ArrivalSpec::exponential(1.0));
  scn.beliefs.assign(agents * states, states ? 1.0 / static_cast<double>(states) : 0.0);
  return scn;
}

std::vector<ArrivalSpec> ValidatedScenario::market_arrivals(std::size_t m, std::size_t s) const {
  std::vector<ArrivalSpec> out;
  out.reserve(agents());
  for (std::size_t j = 0; j < agents(); ++j) out.push_back(arrival(j, m, s));
  return out;
}

ValidatedScenario validate_scenario(Scenario raw) {
  if (raw.agents == 0) throw ValidationError("scenario needs at least one agent");
  if (raw.tasks == 0) throw ValidationError("scenario needs at least one task");
  if (raw.states == 0) throw ValidationError("scenario needs at least one state");
  const std::size_t cells = raw.agents * raw.tasks * raw.states;
  if (!raw.rho.same_shape(raw.agents, raw.tasks, raw.states))
    throw ValidationError("rho table shape does not match (agents, tasks, states)");
  if (raw.arrival.size() != cells)
    throw ValidationError("arrival table shape does not match (agents, tasks, states)");
  if (raw.beliefs.size() != raw.agents * raw.states)
    throw ValidationError("belief table shape does not match (agents, states)");

  for (std::size_t n = 0; n < raw.agents; ++n)
    for (std::size_t m = 0; m < raw.tasks; ++m)
      for (std::size_t s = 0; s < raw.states; ++s) {
        const double r = raw.rho(n, m, s);
        if (!std::isfinite(r) || r <= 0.0)
          throw ValidationError("rho must be strictly positive and finite" + at(n, m, s));
        const std::string problem = raw.arrival_at(n, m, s).domain_error();
        if (!problem.empty()) throw ValidationError(problem + at(n, m, s));
      }

  for (std::size_t n = 0; n < raw.agents; ++n) {
    double total = 0.0;
    for (std::size_t s = 0; s < raw.states; ++s) {
      const double a = raw.belief(n, s);
      if (!std::isfinite(a) || a < 0.0 || a > 1.0) {
        std::ostringstream os;
        os << "belief must lie in [0, 1] (agent " << n + 1 << ", state " << s + 1 << ")";
        throw ValidationError(os.str());
      }
      total += a;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      std::ostringstream os;
      os << "belief row must sum to 1 (agent " << n + 1 << " sums to " << total << ")";
      throw ValidationError(os.str());
    }
    for (std::size_t s = 0; s < raw.states; ++s) raw.belief(n, s) /= total;
  }
  return ValidatedScenario(std::move(raw));
}

EndowmentShares endowment_loads(const ValidatedScenario& scn) {
  EndowmentShares loads(scn.agents(), scn.tasks(), scn.states());
  for (std::size_t n = 0; n < scn.agents(); ++n)
    for (std::size_t m = 0; m < scn.tasks(); ++m)
      for (std::size_t s = 0; s < scn.states(); ++s) {
        const ArrivalSpec& own = scn.arrival(n, m, s);
        loads(n, m, s) = ce_generic(scn.rho(n, m, s), std::span(&own, 1), 1.0);
      }
  return loads;
}

EndowmentShares endowment_shares(const ValidatedScenario& scn) {
  EndowmentShares w = endowment_loads(scn);
  for (std::size_t m = 0; m < scn.tasks(); ++m)
    for (std::size_t s = 0; s < scn.states(); ++s) {
      const double total = w.column_sum(m, s);
      if (!(total > 0.0)) {
        std::ostringstream os;
        os << "empty market for task (" << m + 1 << ", " << s + 1 << ")";
        throw ValidationError(os.str());
      }
      for (std::size_t n = 0; n < scn.agents(); ++n) w(n, m, s) /= total;
    }
  return w;
}

}  // namespace stocore

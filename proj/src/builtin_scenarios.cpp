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

#include "stocore/builtin_scenarios.hpp"

#include <array>

namespace stocore {

Scenario general_example_scenario() {
  Scenario scn = Scenario::with_shape(4, 3, 3);
  scn.name = "general-example";
  scn.seed = 20190101;
  // [state][task][agent]
  constexpr std::array<std::array<std::array<double, 4>, 3>, 3> table{{
      {{{0.80, 0.34, 0.72, 0.42}, {0.21, 0.68, 0.22, 0.78}, {0.26, 0.19, 0.65, 0.71}}},
      {{{0.90, 0.70, 0.74, 0.90}, {0.89, 0.19, 0.50, 0.61}, {0.33, 0.20, 0.48, 0.62}}},
      {{{0.86, 0.21, 0.19, 0.98}, {0.81, 0.24, 0.49, 0.71}, {0.88, 0.89, 0.21, 0.50}}},
  }};
  constexpr std::array<std::array<double, 3>, 4> beliefs{{
      {0.10, 0.30, 0.60}, {0.20, 0.50, 0.30}, {0.34, 0.33, 0.33}, {0.90, 0.05, 0.05}}};
  for (std::size_t n = 0; n < 4; ++n) {
    for (std::size_t m = 0; m < 3; ++m)
      for (std::size_t s = 0; s < 3; ++s) {
        scn.rho(n, m, s) = table[s][m][n];
        scn.arrival_at(n, m, s) = ArrivalSpec::exponential(static_cast<double>(n + 1));
      }
    for (std::size_t s = 0; s < 3; ++s) scn.belief(n, s) = beliefs[n][s];
  }
  return scn;
}

Scenario toy_sbs_scenario() {
  Scenario scn = Scenario::with_shape(2, 2, 2);
  scn.name = "toy-sbs";
  scn.seed = 20190102;
  constexpr std::array<double, 2> transmission{0.9, 0.7};
  constexpr std::array<std::array<double, 2>, 2> computation{{{0.9, 0.1}, {0.4, 0.6}}};
  constexpr std::array<std::array<double, 2>, 2> beliefs{{{0.20, 0.80}, {0.40, 0.60}}};
  for (std::size_t n = 0; n < 2; ++n)
    for (std::size_t s = 0; s < 2; ++s) {
      scn.rho(n, 0, s) = transmission[n];
      scn.rho(n, 1, s) = computation[n][s];
      scn.belief(n, s) = beliefs[n][s];
    }
  return scn;
}

std::vector<std::string> builtin_scenario_names() { return {"general-example", "toy-sbs"}; }

std::optional<Scenario> builtin_scenario(std::string_view name) {
  if (name == "general-example") return general_example_scenario();
  if (name == "toy-sbs") return toy_sbs_scenario();
  return std::nullopt;
}

}  // namespace stocore

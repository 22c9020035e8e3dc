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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stocore/scenario.hpp"

namespace stocore {

/// Four agents, three tasks, three states; performance indices from the
/// published table, Exponential(n) arrivals for agent n, random beliefs.
Scenario general_example_scenario();

/// Two small base stations sharing a transmission task (index 0) and a
/// computation task (index 1) under sunny (state 0) and windy (state 1) weather.
Scenario toy_sbs_scenario();

std::vector<std::string> builtin_scenario_names();
std::optional<Scenario> builtin_scenario(std::string_view name);

}  // namespace stocore

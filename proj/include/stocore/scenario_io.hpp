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

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stocore/scenario.hpp"
#include "stocore/tatonnement.hpp"

namespace stocore {

inline constexpr const char* kToolVersion = "0.1.0";

/// Malformed scenario document. The message names the offending field,
/// e.g. "agents[2].arrival[0][1].rate: expected a number".
class ScenarioFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario JSON layout:
///   { "name": str, "tasks": M, "states": S, "seed": uint,
///     "agents": [ { "rho": [[...S] x M],
///                   "arrival": [[{"kind": "exponential", "rate": x}, ...] x M],
///                   "beliefs": [...S] } x N ] }
/// Arrival kinds: exponential(rate), poisson(rate), normal(mean, stddev),
/// deterministic(value). The result is not yet validated.
Scenario parse_scenario(std::string_view json_text);
std::string scenario_to_json(const Scenario& scn);

/// Built-in name ("general-example", "toy-sbs") or path to a JSON file.
ValidatedScenario load_scenario(const std::string& path_or_name);
void save_scenario(const std::filesystem::path& path, const Scenario& scn);

struct RunManifest {
  std::string command;
  std::string scenario_source;
  AuctionConfig auction;
  std::uint64_t seed = 0;
  std::size_t draws = 0;
  std::string output_dir;
  std::string version = kToolVersion;
};

std::string manifest_to_json(const RunManifest& manifest);
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

}  // namespace stocore

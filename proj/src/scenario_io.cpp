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

#include "stocore/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stocore/builtin_scenarios.hpp"

namespace stocore {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ScenarioFormatError(field + ": " + what);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string child(const std::string& path, const char* key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::size_t count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() <= 0) fail(path, "expected a positive integer");
  return v.get<std::size_t>();
}

const json& array_of(const json& v, const std::string& path, std::size_t expected) {
  if (!v.is_array()) fail(path, "expected an array");
  if (v.size() != expected)
    fail(path, "expected " + std::to_string(expected) + " entries, found " + std::to_string(v.size()));
  return v;
}

ArrivalSpec parse_arrival(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  const json& kind = member(v, path, "kind");
  if (!kind.is_string()) fail(child(path, "kind"), "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "exponential")
    return ArrivalSpec::exponential(number(member(v, path, "rate"), child(path, "rate")));
  if (k == "poisson")
    return ArrivalSpec::poisson(number(member(v, path, "rate"), child(path, "rate")));
  if (k == "normal")
    return ArrivalSpec::truncated_normal(number(member(v, path, "mean"), child(path, "mean")),
                                         number(member(v, path, "stddev"), child(path, "stddev")));
  if (k == "deterministic")
    return ArrivalSpec::deterministic(number(member(v, path, "value"), child(path, "value")));
  fail(child(path, "kind"), "unknown arrival kind \"" + k + "\"");
}

json arrival_to_json(const ArrivalSpec& a) {
  json out{{"kind", to_string(a.kind())}};
  switch (a.kind()) {
    case ArrivalSpec::Kind::Exponential:
    case ArrivalSpec::Kind::Poisson: out["rate"] = a.first(); break;
    case ArrivalSpec::Kind::NormalTruncatedAtZero:
      out["mean"] = a.first();
      out["stddev"] = a.second();
      break;
    case ArrivalSpec::Kind::Deterministic: out["value"] = a.first(); break;
  }
  return out;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioFormatError(std::string("document: ") + e.what());
  }
  if (!doc.is_object()) fail("document", "expected an object");

  const std::size_t M = count(member(doc, "", "tasks"), "tasks");
  const std::size_t S = count(member(doc, "", "states"), "states");
  const json& agents = member(doc, "", "agents");
  if (!agents.is_array() || agents.empty()) fail("agents", "expected a nonempty array");
  const std::size_t N = agents.size();

  Scenario scn = Scenario::with_shape(N, M, S);
  if (const auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) fail("name", "expected a string");
    scn.name = it->get<std::string>();
  }
  if (const auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_unsigned()) fail("seed", "expected a nonnegative integer");
    scn.seed = it->get<std::uint64_t>();
  }

  for (std::size_t n = 0; n < N; ++n) {
    const std::string ap = index("agents", n);
    const json& agent = agents[n];
    if (!agent.is_object()) fail(ap, "expected an object");
    const std::string rp = child(ap, "rho"), qp = child(ap, "arrival"), bp = child(ap, "beliefs");
    const json& rho = array_of(member(agent, ap, "rho"), rp, M);
    const json& arrival = array_of(member(agent, ap, "arrival"), qp, M);
    for (std::size_t m = 0; m < M; ++m) {
      const json& rho_row = array_of(rho[m], index(rp, m), S);
      const json& arr_row = array_of(arrival[m], index(qp, m), S);
      for (std::size_t s = 0; s < S; ++s) {
        scn.rho(n, m, s) = number(rho_row[s], index(index(rp, m), s));
        scn.arrival_at(n, m, s) = parse_arrival(arr_row[s], index(index(qp, m), s));
      }
    }
    const json& beliefs = array_of(member(agent, ap, "beliefs"), bp, S);
    for (std::size_t s = 0; s < S; ++s) scn.belief(n, s) = number(beliefs[s], index(bp, s));
  }
  return scn;
}

std::string scenario_to_json(const Scenario& scn) {
  json agents = json::array();
  for (std::size_t n = 0; n < scn.agents; ++n) {
    json rho = json::array(), arrival = json::array(), beliefs = json::array();
    for (std::size_t m = 0; m < scn.tasks; ++m) {
      json rho_row = json::array(), arr_row = json::array();
      for (std::size_t s = 0; s < scn.states; ++s) {
        rho_row.push_back(scn.rho(n, m, s));
        arr_row.push_back(arrival_to_json(scn.arrival_at(n, m, s)));
      }
      rho.push_back(std::move(rho_row));
      arrival.push_back(std::move(arr_row));
    }
    for (std::size_t s = 0; s < scn.states; ++s) beliefs.push_back(scn.belief(n, s));
    agents.push_back({{"rho", rho}, {"arrival", arrival}, {"beliefs", beliefs}});
  }
  const json doc{{"name", scn.name}, {"tasks", scn.tasks},   {"states", scn.states},
                 {"seed", scn.seed}, {"agents", agents}};
  return doc.dump(2) + "\n";
}

ValidatedScenario load_scenario(const std::string& path_or_name) {
  if (auto builtin = builtin_scenario(path_or_name)) return validate_scenario(std::move(*builtin));
  std::ifstream in(path_or_name);
  if (!in)
    throw ScenarioFormatError(path_or_name + ": not a built-in scenario and not a readable file");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    Scenario scn = parse_scenario(text.str());
    if (scn.name.empty()) scn.name = std::filesystem::path(path_or_name).stem().string();
    return validate_scenario(std::move(scn));
  } catch (const ScenarioFormatError& e) {
    throw ScenarioFormatError(path_or_name + ": " + e.what());
  }
}

void save_scenario(const std::filesystem::path& path, const Scenario& scn) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << scenario_to_json(scn);
}

std::string manifest_to_json(const RunManifest& manifest) {
  const json doc{{"tool", "stocore"},
                 {"version", manifest.version},
                 {"command", manifest.command},
                 {"scenario", manifest.scenario_source},
                 {"seed", manifest.seed},
                 {"draws", manifest.draws},
                 {"output_dir", manifest.output_dir},
                 {"auction",
                  {{"alpha", manifest.auction.alpha},
                   {"epsilon", manifest.auction.epsilon},
                   {"max_iters", manifest.auction.max_iters}}}};
  return doc.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest) {
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
  out << manifest_to_json(manifest);
}

}  // namespace stocore

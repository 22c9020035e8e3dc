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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stocore/preference.hpp"
#include "stocore/scenario.hpp"
#include "stocore/tables.hpp"

namespace stocore {

/// Nonempty set of agents, as a bitmask (bit n = agent n).
class Coalition {
 public:
  explicit Coalition(std::uint32_t members);
  static Coalition singleton(std::size_t agent);
  static Coalition grand(std::size_t agents);

  std::uint32_t mask() const { return members_; }
  bool contains(std::size_t agent) const { return (members_ >> agent) & 1u; }
  std::size_t size() const;
  std::vector<std::size_t> members() const;
  /// "{1,3}" with 1-based agent labels.
  std::string label() const;

  friend bool operator==(Coalition, Coalition) = default;

 private:
  std::uint32_t members_;
};

/// Ex-ante: expected utility over all states. Ex-post: utility in one
/// realized state, with only that state's markets reallocated.
struct EvaluationMode {
  bool ex_ante = true;
  std::size_t state = 0;

  static EvaluationMode ExAnte() { return {true, 0}; }
  static EvaluationMode ExPost(std::size_t s) { return {false, s}; }
  std::string label() const;
};

/// W_c[m][s] = sum over members of their endowment shares.
CoalitionWealth coalition_endowment(const EndowmentShares& endowment, Coalition c);

struct BlockingOptions {
  std::size_t restarts = 5;
  std::uint64_t seed = 0;
  double feasibility_tolerance = 1e-9;  // on relative member gains
};

/// Outcome of one "how much can the target gain while nobody else in the
/// coalition loses" program. Gains are relative to the member's reference
/// utility.
struct BlockingResult {
  double improvement = 0.0;           // target's relative gain at the optimum
  double absolute_improvement = 0.0;  // same, in utils
  double reference_value = 0.0;       // target's utility under the reference
  double max_violation = 0.0;         // worst relative shortfall of another member
  bool feasible = false;              // some reallocation keeps every other member whole
  bool converged = false;
};

/// Result of maximizing the smallest relative gain over all members; a
/// positive value means every member can be made strictly better off.
struct MaxMinResult {
  double min_gain = 0.0;
  bool converged = false;
};

/// Solves the coalition programs against one reference allocation.
class BlockingAnalyzer {
 public:
  BlockingAnalyzer(const ValidatedScenario& scn, const ShareProfile& reference,
                   BlockingOptions options = {});

  const UtilityModel& model() const { return model_; }
  const EndowmentShares& endowment() const { return endowment_; }
  const ShareProfile& reference() const { return reference_; }

  /// Reference utility of an agent under the mode's valuation.
  double reference_value(std::size_t agent, EvaluationMode mode) const;

  /// max over coalition-feasible reallocations of the target's relative gain,
  /// subject to every other member's gain >= 0. Projected gradient ascent on
  /// an augmented quadratic penalty, best of several starts.
  BlockingResult best_improvement(Coalition c, EvaluationMode mode, std::size_t target) const;

  /// max over coalition-feasible reallocations of min_j relative gain_j.
  MaxMinResult max_min_gain(Coalition c, EvaluationMode mode) const;
  MaxMinResult max_min_gain_excluding(Coalition c, EvaluationMode mode, std::size_t excluded) const;

 private:
  UtilityModel model_;
  EndowmentShares endowment_;
  ShareProfile reference_;
  BlockingOptions options_;
};

BlockingResult best_improvement(const ValidatedScenario& scn, Coalition c,
                                const ShareProfile& reference, EvaluationMode mode,
                                std::size_t target, BlockingOptions options = {});

struct SscOptions {
  double tol = 1e-6;                 // relative improvement counted as blocking
  double clearing_tolerance = 0.01;  // max |sum_n r - 1| accepted as efficient
  std::size_t max_agents = 20;
  BlockingOptions blocking;
};

struct SscEntry {
  Coalition coalition{1};
  std::size_t target = 0;
  EvaluationMode mode;
  BlockingResult result;
};

struct StrongEntry {
  Coalition coalition{1};
  EvaluationMode mode;
  MaxMinResult result;
};

struct SscReport {
  std::vector<SscEntry> ex_ante;
  std::vector<std::vector<SscEntry>> ex_post;  // [state]
  std::vector<StrongEntry> strong;
  double clearing_error = 0.0;
  bool clearing_ok = false;
  bool inconclusive = false;  // some program did not converge
  bool weak_verdict = false;  // no coalition weakly blocks (one strict, rest weak)
  bool strong_verdict = false;  // no coalition strictly improves every member
  bool verdict = false;
  std::optional<SscEntry> worst_offender;  // largest feasible improvement
};

/// Strong-sequential-core test: every coalition, every member as target,
/// ex-ante and in every state ex-post, under both blocking predicates.
SscReport check_ssc(const ValidatedScenario& scn, const ShareProfile& allocation,
                    const SscOptions& options = {});

/// CSV: coalition, members, target, mode, status, improvement, normalized.
void write_ssc_csv(std::ostream& os, const SscReport& report);

}  // namespace stocore

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
#include <span>

#include "stocore/tables.hpp"

namespace stocore {

/// Virtual prices p_m^(s), one per state-contingent task. Entries are kept
/// strictly positive; only relative prices within a state carry meaning.
class PriceSystem : public TaskStateTable<tags::Price> {
 public:
  PriceSystem() = default;
  PriceSystem(std::size_t tasks, std::size_t states, double fill = 1.0)
      : TaskStateTable<tags::Price>(tasks, states, fill) {}

  static PriceSystem uniform_ones(std::size_t tasks, std::size_t states) {
    return PriceSystem(tasks, states, 1.0);
  }

  /// Each state's vector divided by its first component (numeraire = task 0).
  PriceSystem normalized() const;

  /// Throws std::invalid_argument unless every entry is finite and > 0.
  void require_positive() const;

  /// Dot product of the state-s price vector with a task vector.
  double value(std::size_t s, std::span<const double> task_vector) const;
};

}  // namespace stocore

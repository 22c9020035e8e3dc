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
#include <initializer_list>
#include <random>
#include <string_view>

namespace stocore {

/// Expands one run seed into independent per-purpose streams. The derived
/// seed depends only on (seed, purpose, indices), so adding a new consumer
/// never shifts the draws another consumer sees.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose,
                          std::initializer_list<std::uint64_t> indices = {});

inline std::mt19937_64 make_stream(std::uint64_t seed, std::string_view purpose,
                                   std::initializer_list<std::uint64_t> indices = {}) {
  return std::mt19937_64(derive_seed(seed, purpose, indices));
}

}  // namespace stocore

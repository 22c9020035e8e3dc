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

#include "stocore/seeding.hpp"

namespace stocore {

std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose,
                          std::initializer_list<std::uint64_t> indices) {
  // splitmix64 finalizer folded over FNV-1a of the purpose tag and the indices
  const auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t tag = 0xcbf29ce484222325ULL;
  for (unsigned char c : purpose) {
    tag ^= c;
    tag *= 0x100000001b3ULL;
  }
  std::uint64_t h = mix(seed ^ mix(tag));
  for (std::uint64_t i : indices) h = mix(h ^ mix(i + 0x632be59bd9b4e019ULL));
  return h;
}

}  // namespace stocore

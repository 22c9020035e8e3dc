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

#include <iosfwd>

namespace stocore {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNoConvergence = 2;
inline constexpr int kExitUsage = 64;

/// Entry point of the `stocore` tool. Subcommands: solve, core-check,
/// baselines, simulate, reproduce. The default output directory is taken
/// from STOCORE_OUT_DIR, falling back to "stocore-out".
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stocore

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

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

namespace stocore::csv {

/// All reported reals use 12 significant digits.
inline std::string real(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

}  // namespace stocore::csv

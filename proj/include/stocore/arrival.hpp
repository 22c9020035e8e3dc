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
#include <random>
#include <string>

namespace stocore {

/// Distribution of the initial load one agent receives for one
/// state-contingent task. Every supported kind has a nonnegative support,
/// so the moment generating function is finite for nonpositive arguments,
/// which is the only region the certainty equivalent needs.
class ArrivalSpec {
 public:
  enum class Kind { Exponential, Poisson, NormalTruncatedAtZero, Deterministic };

  static ArrivalSpec exponential(double rate);
  static ArrivalSpec poisson(double rate);
  /// Normal(mean, stddev) conditioned on being positive.
  static ArrivalSpec truncated_normal(double mean, double stddev);
  static ArrivalSpec deterministic(double value);

  Kind kind() const { return kind_; }
  /// Rate for Exponential/Poisson, mean for the normal, value for Deterministic.
  double first() const { return first_; }
  /// Standard deviation of the untruncated normal; 0 otherwise.
  double second() const { return second_; }

  /// Empty string when the parameters are inside their domain, otherwise a
  /// description of the violation.
  std::string domain_error() const;

  /// Cumulant generating function K(t) = ln E[e^{tq}] for t <= 0.
  double cumulant(double t) const;
  /// K'(t), the mean of the exponentially tilted distribution; positive for
  /// every kind except Deterministic(0).
  double cumulant_slope(double t) const;
  /// K''(t), the variance of the tilted distribution; nonnegative.
  double cumulant_curvature(double t) const;

  double mean() const;
  double sample(std::mt19937_64& rng) const;

  std::string describe() const;

  friend bool operator==(const ArrivalSpec&, const ArrivalSpec&) = default;

 private:
  ArrivalSpec(Kind kind, double first, double second)
      : kind_(kind), first_(first), second_(second) {}

  Kind kind_ = Kind::Deterministic;
  double first_ = 0.0;
  double second_ = 0.0;
};

const char* to_string(ArrivalSpec::Kind kind);

}  // namespace stocore

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

#include "stocore/arrival.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace stocore {
namespace {

// Tail cutoff below which erfc underflows and the asymptotic series takes over.
constexpr double kNormalTailCut = -30.0;

double log_normal_cdf(double a) {
  if (a >= kNormalTailCut) return std::log(0.5 * std::erfc(-a / std::numbers::sqrt2));
  const double inv2 = 1.0 / (a * a);
  const double series = 1.0 - inv2 + 3.0 * inv2 * inv2 - 15.0 * inv2 * inv2 * inv2;
  const double log_pdf = -0.5 * a * a - 0.5 * std::log(2.0 * std::numbers::pi);
  return log_pdf - std::log(-a) + std::log(series);
}

// phi(a) / Phi(a)
double inverse_mills(double a) {
  if (a >= kNormalTailCut) {
    const double pdf = std::exp(-0.5 * a * a) / std::sqrt(2.0 * std::numbers::pi);
    return pdf / (0.5 * std::erfc(-a / std::numbers::sqrt2));
  }
  const double inv2 = 1.0 / (a * a);
  return -a / (1.0 - inv2 + 3.0 * inv2 * inv2 - 15.0 * inv2 * inv2 * inv2);
}

}  // namespace

ArrivalSpec ArrivalSpec::exponential(double rate) { return {Kind::Exponential, rate, 0.0}; }
ArrivalSpec ArrivalSpec::poisson(double rate) { return {Kind::Poisson, rate, 0.0}; }
ArrivalSpec ArrivalSpec::truncated_normal(double mean, double stddev) {
  return {Kind::NormalTruncatedAtZero, mean, stddev};
}
ArrivalSpec ArrivalSpec::deterministic(double value) { return {Kind::Deterministic, value, 0.0}; }

std::string ArrivalSpec::domain_error() const {
  const auto bad = [](double x) { return !std::isfinite(x); };
  switch (kind_) {
    case Kind::Exponential:
    case Kind::Poisson:
      if (bad(first_) || first_ <= 0.0) return "arrival rate must be strictly positive";
      return {};
    case Kind::NormalTruncatedAtZero:
      if (bad(first_) || first_ <= 0.0) return "normal arrival mean must be strictly positive";
      if (bad(second_) || second_ <= 0.0) return "normal arrival stddev must be strictly positive";
      return {};
    case Kind::Deterministic:
      if (bad(first_) || first_ < 0.0) return "deterministic arrival must be nonnegative";
      return {};
  }
  return "unknown arrival kind";
}

double ArrivalSpec::cumulant(double t) const {
  switch (kind_) {
    case Kind::Exponential:
      return -std::log1p(-t / first_);
    case Kind::Poisson:
      return first_ * std::expm1(t);
    case Kind::NormalTruncatedAtZero: {
      const double z = first_ / second_;
      return first_ * t + 0.5 * second_ * second_ * t * t + log_normal_cdf(z + second_ * t) -
             log_normal_cdf(z);
    }
    case Kind::Deterministic:
      return first_ * t;
  }
  throw std::logic_error("unknown arrival kind");
}

double ArrivalSpec::cumulant_slope(double t) const {
  switch (kind_) {
    case Kind::Exponential:
      return 1.0 / (first_ - t);
    case Kind::Poisson:
      return first_ * std::exp(t);
    case Kind::NormalTruncatedAtZero: {
      const double a = first_ / second_ + second_ * t;
      return first_ + second_ * second_ * t + second_ * inverse_mills(a);
    }
    case Kind::Deterministic:
      return first_;
  }
  throw std::logic_error("unknown arrival kind");
}

double ArrivalSpec::cumulant_curvature(double t) const {
  switch (kind_) {
    case Kind::Exponential: {
      const double gap = first_ - t;
      return 1.0 / (gap * gap);
    }
    case Kind::Poisson:
      return first_ * std::exp(t);
    case Kind::NormalTruncatedAtZero: {
      const double a = first_ / second_ + second_ * t;
      const double mills = inverse_mills(a);
      return second_ * second_ * (1.0 - mills * (a + mills));
    }
    case Kind::Deterministic:
      return 0.0;
  }
  throw std::logic_error("unknown arrival kind");
}

double ArrivalSpec::mean() const { return cumulant_slope(0.0); }

double ArrivalSpec::sample(std::mt19937_64& rng) const {
  switch (kind_) {
    case Kind::Exponential:
      return std::exponential_distribution<double>(first_)(rng);
    case Kind::Poisson:
      return static_cast<double>(std::poisson_distribution<long long>(first_)(rng));
    case Kind::NormalTruncatedAtZero: {
      // mean > 0, so each proposal is accepted with probability above one half
      std::normal_distribution<double> normal(first_, second_);
      for (;;) {
        const double x = normal(rng);
        if (x > 0.0) return x;
      }
    }
    case Kind::Deterministic:
      return first_;
  }
  throw std::logic_error("unknown arrival kind");
}

std::string ArrivalSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << '(' << first_;
  if (kind_ == Kind::NormalTruncatedAtZero) os << ", " << second_;
  os << ')';
  return os.str();
}

const char* to_string(ArrivalSpec::Kind kind) {
  switch (kind) {
    case ArrivalSpec::Kind::Exponential: return "exponential";
    case ArrivalSpec::Kind::Poisson: return "poisson";
    case ArrivalSpec::Kind::NormalTruncatedAtZero: return "normal";
    case ArrivalSpec::Kind::Deterministic: return "deterministic";
  }
  return "unknown";
}

}  // namespace stocore

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

#include "stocore/core_analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stocore/csv.hpp"
#include "stocore/seeding.hpp"

namespace stocore {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxRootIterations = 200;
constexpr int kMaxNewtonIterations = 300;
constexpr int kMaxHalvings = 60;
constexpr double kDualTolerance = 5e-10;
constexpr double kStallTolerance = 1e-8;
constexpr double kNewtonRegion = 1e-6;
constexpr double kDivergence = 1e10;

// Euclidean projection of v onto {x >= 0, sum x = total}.
void project_onto_simplex(std::span<double> v, double total) {
  if (v.size() == 1) {
    v[0] = total;
    return;
  }
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0;
  double shift = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    running += sorted[i];
    const double candidate = (running - total) / static_cast<double>(i + 1);
    if (i + 1 == sorted.size() || sorted[i + 1] <= candidate) {
      shift = candidate;
      break;
    }
  }
  for (double& x : v) x = std::max(x - shift, 0.0);
}

// Solves weight * g'(x) = level on [0, cap] for a strictly concave g.
double inverse_marginal(const ShareCurve& curve, double weight, double level, double cap) {
  if (weight * curve.marginal(0.0) <= level) return 0.0;
  if (weight * curve.marginal(cap) >= level) return cap;
  double lo = 0.0, hi = cap, x = 0.5 * cap;
  for (int it = 0; it < kMaxRootIterations && hi - lo > 1e-15 * cap; ++it) {
    const double f = weight * curve.marginal(x) - level;
    if (f == 0.0) return x;
    (f > 0.0 ? lo : hi) = x;
    const double next = x - f / (weight * curve.curvature(x));
    if (next > lo && next < hi) {
      if (std::abs(next - x) <= 1e-15 * cap) return next;
      x = next;
    } else {
      x = 0.5 * (lo + hi);
    }
  }
  return x;
}

// Maximizes sum_j weight_j g_j(x_j) subject to sum_j x_j = total, x >= 0.
void water_fill(std::span<const ShareCurve* const> curves, std::span<const double> weight,
                double total, std::span<double> x) {
  const std::size_t n = curves.size();
  std::fill(x.begin(), x.end(), 0.0);
  if (total <= 0.0) return;
  double level_lo = std::numeric_limits<double>::infinity();
  double level_hi = 0.0;
  std::size_t active = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (weight[j] <= 0.0) continue;
    ++active;
    level_lo = std::min(level_lo, weight[j] * curves[j]->marginal(total));
    level_hi = std::max(level_hi, weight[j] * curves[j]->marginal(0.0));
  }
  if (active == 0) {
    // nobody values this cell
    std::fill(x.begin(), x.end(), total / static_cast<double>(n));
    return;
  }
  const auto fill = [&](double level) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (weight[j] > 0.0) sum += (x[j] = inverse_marginal(*curves[j], weight[j], level, total));
    return sum;
  };
  // fill(level) is nonincreasing: >= total at level_lo, 0 at level_hi.
  double level = 0.5 * (level_lo + level_hi);
  for (int it = 0; it < kMaxRootIterations; ++it) {
    const double gap = fill(level) - total;
    if (std::abs(gap) <= 1e-14 * total || level_hi - level_lo <= 1e-15 * level_hi) break;
    (gap > 0.0 ? level_lo : level_hi) = level;
    double slope = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (weight[j] > 0.0 && x[j] > 0.0 && x[j] < total)
        slope += 1.0 / (weight[j] * curves[j]->curvature(x[j]));
    const double next = slope < 0.0 ? level - gap / slope : level_lo;
    level = (next > level_lo && next < level_hi) ? next : 0.5 * (level_lo + level_hi);
  }
  // absorb the rounding residual in the largest holding
  double sum = 0.0;
  for (double v : x) sum += v;
  const std::size_t largest =
      static_cast<std::size_t>(std::max_element(x.begin(), x.end()) - x.begin());
  x[largest] = std::max(0.0, x[largest] + total - sum);
}

// Solves A d = b for a small dense symmetric positive definite A; false
// when the factorization breaks down.
bool cholesky_solve(std::vector<double> a, std::size_t n, std::vector<double>& b) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    a[j * n + j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = v / d;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= a[i * n + k] * b[k];
    b[i] /= a[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) b[i] -= a[k * n + i] * b[k];
    b[i] /= a[i * n + i];
  }
  return true;
}

// One coalition's reallocation problem in a given mode. Member j holds
// x[j*K + k] of cell k = (task, state); each cell's holdings sum to the
// coalition's wealth in that cell. gain_j is the relative utility change
// against the reference allocation.
class CoalitionProgram {
 public:
  CoalitionProgram(const BlockingAnalyzer& analyzer, Coalition c, EvaluationMode mode)
      : members_(c.members()) {
    const UtilityModel& model = analyzer.model();
    for (std::size_t s = 0; s < model.states(); ++s) {
      if (!mode.ex_ante && s != mode.state) continue;
      for (std::size_t m = 0; m < model.tasks(); ++m) cells_.push_back({m, s});
    }
    const CoalitionWealth wealth = coalition_endowment(analyzer.endowment(), c);
    for (const Cell& cell : cells_) wealth_.push_back(wealth(cell.task, cell.state));
    for (std::size_t agent : members_) {
      const double ref = analyzer.reference_value(agent, mode);
      const double scale = std::abs(ref) > 0.0 ? std::abs(ref) : 1.0;
      reference_.push_back(ref);
      scale_.push_back(scale);
      for (const Cell& cell : cells_) {
        curves_.push_back(&model.curve(agent, cell.task, cell.state));
        // d gain_j / d utility in this cell
        weights_.push_back((mode.ex_ante ? model.belief(agent, cell.state) : 1.0) / scale);
      }
    }
  }

  std::size_t members() const { return members_.size(); }
  std::size_t member_index(std::size_t agent) const {
    return static_cast<std::size_t>(
        std::find(members_.begin(), members_.end(), agent) - members_.begin());
  }
  double reference(std::size_t j) const { return reference_[j]; }
  double scale(std::size_t j) const { return scale_[j]; }

  std::vector<double> gains(std::span<const double> x) const {
    const std::size_t K = cells_.size();
    std::vector<double> out(members_.size());
    for (std::size_t j = 0; j < members_.size(); ++j) {
      double total = 0.0;
      for (std::size_t k = 0; k < K; ++k)
        total += weights_[j * K + k] * curves_[j * K + k]->value(x[j * K + k]);
      out[j] = total - reference_[j] / scale_[j];
    }
    return out;
  }

  // Each member consumes its own endowment.
  std::vector<double> endowment_holdings(const EndowmentShares& w) const {
    const std::size_t K = cells_.size();
    std::vector<double> x(members_.size() * K);
    for (std::size_t j = 0; j < members_.size(); ++j)
      for (std::size_t k = 0; k < K; ++k)
        x[j * K + k] = w(members_[j], cells_[k].task, cells_[k].state);
    return x;
  }

  // argmax_x sum_j theta_j gain_j(x).
  std::vector<double> allocate(std::span<const double> theta) const {
    const std::size_t J = members_.size(), K = cells_.size();
    std::vector<double> x(J * K);
    std::vector<const ShareCurve*> curves(J);
    std::vector<double> weight(J), column(J);
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t j = 0; j < J; ++j) {
        curves[j] = curves_[j * K + k];
        weight[j] = theta[j] * weights_[j * K + k];
      }
      water_fill(curves, weight, wealth_[k], column);
      for (std::size_t j = 0; j < J; ++j) x[j * K + k] = column[j];
    }
    return x;
  }

  // Hessian in theta of D(theta) = max_x sum_j theta_j gain_j(x), from the
  // sensitivity of each cell's water level.
  std::vector<double> dual_hessian(std::span<const double> theta, std::span<const double> x) const {
    const std::size_t J = members_.size(), K = cells_.size();
    std::vector<double> hess(J * J, 0.0);
    std::vector<std::size_t> interior;
    std::vector<double> c(J), h(J);
    for (std::size_t k = 0; k < K; ++k) {
      interior.clear();
      double inverse_sum = 0.0;
      for (std::size_t j = 0; j < J; ++j) {
        const double a = theta[j] * weights_[j * K + k];
        const double share = x[j * K + k];
        if (a <= 0.0 || share <= 0.0) continue;
        const ShareCurve& curve = *curves_[j * K + k];
        c[j] = weights_[j * K + k] * curve.marginal(share);
        h[j] = a * curve.curvature(share);
        if (!(h[j] < 0.0)) continue;
        interior.push_back(j);
        inverse_sum += 1.0 / h[j];
      }
      if (interior.size() < 2) continue;
      for (std::size_t i : interior) {
        hess[i * J + i] -= c[i] * c[i] / h[i];
        for (std::size_t l : interior)
          hess[i * J + l] += c[i] * c[l] / (h[i] * h[l] * inverse_sum);
      }
    }
    return hess;
  }

 private:
  struct Cell {
    std::size_t task;
    std::size_t state;
  };
  std::vector<std::size_t> members_;
  std::vector<Cell> cells_;
  std::vector<double> wealth_;
  std::vector<const ShareCurve*> curves_;
  std::vector<double> weights_;
  std::vector<double> reference_;
  std::vector<double> scale_;
};

struct DualPoint {
  std::vector<double> theta;
  std::vector<double> x;
  std::vector<double> gains;
  double value = 0.0;
};

struct DualSolution {
  DualPoint point;
  bool converged = false;
  bool diverged = false;
};

// Minimizes the convex dual D(theta) = max_x sum_j theta_j gain_j(x) by
// projected Newton. Members outside `free` keep their weight. With
// `simplex` the free weights stay on the unit simplex (max-min program);
// otherwise they are only bounded below by zero (one target at weight 1).
class DualSolver {
 public:
  DualSolver(const CoalitionProgram& program, std::vector<std::size_t> free, bool simplex)
      : program_(program), free_(std::move(free)), simplex_(simplex) {}

  DualSolution solve(std::vector<double> theta) const {
    DualSolution out;
    out.point = evaluate(std::move(theta));
    const std::size_t J = program_.members();
    int stalls = 0;
    for (int it = 0; it < kMaxNewtonIterations; ++it) {
      const DualPoint& cur = out.point;
      const std::vector<double>& grad = cur.gains;
      const std::size_t pivot = pivot_of(cur);
      const auto reduced = [&](std::size_t j) { return grad[j] - (simplex_ ? grad[pivot] : 0.0); };
      std::vector<std::size_t> vars;
      for (std::size_t j : free_)
        if (j != pivot) vars.push_back(j);
      const double measure = stationarity(cur);
      if (measure <= kDualTolerance) {
        out.converged = true;
        break;
      }

      const std::vector<double> hess = program_.dual_hessian(cur.theta, cur.x);
      const auto reduced_hess = [&](std::size_t i, std::size_t l) {
        double v = hess[i * J + l];
        if (simplex_) v += hess[pivot * J + pivot] - hess[i * J + pivot] - hess[pivot * J + l];
        return v;
      };
      const double active_band = std::min(1e-3, measure);
      double diag_max = 0.0;
      for (std::size_t j : vars) diag_max = std::max(diag_max, reduced_hess(j, j));
      const double theta_scale = *std::max_element(cur.theta.begin(), cur.theta.end());

      std::vector<double> direction(J, 0.0);
      std::vector<std::size_t> newton;
      for (std::size_t j : vars) {
        const double r = reduced(j);
        if (cur.theta[j] <= active_band && r > 0.0)
          direction[j] = -cur.theta[j];
        else if (reduced_hess(j, j) <= 1e-12 * std::max(1.0, diag_max))
          // locally linear in this weight
          direction[j] = (r > 0.0 ? -1.0 : 1.0) * std::max(cur.theta[j], theta_scale);
        else
          newton.push_back(j);
      }
      if (!newton.empty()) {
        const std::size_t n = newton.size();
        std::vector<double> a(n * n), b(n);
        for (std::size_t p = 0; p < n; ++p) {
          b[p] = -reduced(newton[p]);
          for (std::size_t q = 0; q < n; ++q) a[p * n + q] = reduced_hess(newton[p], newton[q]);
          a[p * n + p] += 1e-12 * std::max(1.0, diag_max);
        }
        if (!cholesky_solve(a, n, b))
          for (std::size_t p = 0; p < n; ++p) b[p] = -reduced(newton[p]);
        for (std::size_t p = 0; p < n; ++p) direction[newton[p]] = b[p];
      }
      if (simplex_)
        for (std::size_t j : vars) direction[pivot] -= direction[j];

      const double value_before = cur.value;
      bool accepted = false;
      for (int halving = 0; halving < kMaxHalvings && !accepted; ++halving) {
        const double step = std::ldexp(1.0, -halving);
        std::vector<double> theta = cur.theta;
        for (std::size_t j : free_) theta[j] += step * direction[j];
        project(theta);
        double decrease = 0.0;
        for (std::size_t j : free_) decrease += grad[j] * (theta[j] - cur.theta[j]);
        DualPoint next = evaluate(std::move(theta));
        // near the optimum D is flat to rounding; judge by stationarity instead
        if (next.value <= cur.value + 1e-4 * decrease ||
            (measure <= kNewtonRegion && stationarity(next) < 0.5 * measure)) {
          out.point = std::move(next);
          accepted = true;
        }
      }
      const bool progress =
          accepted && (out.point.value < value_before - 1e-15 * std::abs(value_before) ||
                       stationarity(out.point) < 0.5 * measure);
      stalls = progress ? 0 : stalls + 1;
      if (!accepted || stalls >= 3) {
        out.converged = measure <= kStallTolerance;
        break;
      }
      for (std::size_t j : free_)
        if (out.point.theta[j] > kDivergence) {
          out.diverged = true;
          return out;
        }
    }
    return out;
  }

 private:
  std::size_t pivot_of(const DualPoint& p) const {
    if (!simplex_) return p.theta.size();
    return *std::max_element(free_.begin(), free_.end(), [&](std::size_t a, std::size_t b) {
      return p.theta[a] < p.theta[b];
    });
  }

  // Largest component of theta - P(theta - reduced gradient).
  double stationarity(const DualPoint& p) const {
    const std::size_t pivot = pivot_of(p);
    double measure = 0.0;
    for (std::size_t j : free_) {
      if (j == pivot) continue;
      const double r = p.gains[j] - (simplex_ ? p.gains[pivot] : 0.0);
      measure = std::max(measure, std::abs(p.theta[j] - std::max(0.0, p.theta[j] - r)));
    }
    return measure;
  }

  void project(std::vector<double>& theta) const {
    if (!simplex_) {
      for (std::size_t j : free_) theta[j] = std::max(0.0, theta[j]);
      return;
    }
    std::vector<double> v;
    for (std::size_t j : free_) v.push_back(theta[j]);
    project_onto_simplex(v, 1.0);
    for (std::size_t i = 0; i < free_.size(); ++i) theta[free_[i]] = v[i];
  }

  DualPoint evaluate(std::vector<double> theta) const {
    DualPoint p;
    p.x = program_.allocate(theta);
    p.gains = program_.gains(p.x);
    for (std::size_t j = 0; j < theta.size(); ++j) p.value += theta[j] * p.gains[j];
    p.theta = std::move(theta);
    return p;
  }

  const CoalitionProgram& program_;
  std::vector<std::size_t> free_;
  bool simplex_;
};

}  // namespace

Coalition::Coalition(std::uint32_t members) : members_(members) {
  if (members == 0) throw std::invalid_argument("coalition must be nonempty");
}

Coalition Coalition::singleton(std::size_t agent) {
  if (agent >= 32) throw std::invalid_argument("coalitions support at most 32 agents");
  return Coalition(1u << agent);
}

Coalition Coalition::grand(std::size_t agents) {
  if (agents == 0 || agents > 32) throw std::invalid_argument("coalitions support 1..32 agents");
  return Coalition(agents == 32 ? ~0u : (1u << agents) - 1u);
}

std::size_t Coalition::size() const { return static_cast<std::size_t>(std::popcount(members_)); }

std::vector<std::size_t> Coalition::members() const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < 32; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

std::string Coalition::label() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t n : members()) {
    if (!first) os << ',';
    os << n + 1;
    first = false;
  }
  os << '}';
  return os.str();
}

std::string EvaluationMode::label() const {
  return ex_ante ? "ex-ante" : "ex-post-s" + std::to_string(state + 1);
}

CoalitionWealth coalition_endowment(const EndowmentShares& endowment, Coalition c) {
  CoalitionWealth total(endowment.tasks(), endowment.states());
  for (std::size_t n : c.members()) {
    if (n >= endowment.agents()) throw std::invalid_argument("coalition member out of range");
    for (std::size_t m = 0; m < endowment.tasks(); ++m)
      for (std::size_t s = 0; s < endowment.states(); ++s) total(m, s) += endowment(n, m, s);
  }
  return total;
}

BlockingAnalyzer::BlockingAnalyzer(const ValidatedScenario& scn, const ShareProfile& reference,
                                   BlockingOptions options)
    : model_(scn), endowment_(endowment_shares(scn)), reference_(reference), options_(options) {
  if (!reference_.same_shape(scn.agents(), scn.tasks(), scn.states()))
    throw std::invalid_argument("reference allocation shape does not match the scenario");
}

double BlockingAnalyzer::reference_value(std::size_t agent, EvaluationMode mode) const {
  return mode.ex_ante ? model_.expected_utility(agent, reference_)
                      : model_.state_utility(agent, mode.state, reference_);
}

MaxMinResult BlockingAnalyzer::max_min_gain_excluding(Coalition c, EvaluationMode mode,
                                                      std::size_t excluded) const {
  const CoalitionProgram program(*this, c, mode);
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < program.members(); ++j)
    if (!(c.contains(excluded) && j == program.member_index(excluded))) free.push_back(j);
  if (free.empty()) return {std::numeric_limits<double>::infinity(), true};
  if (program.members() == 1)
    return {program.gains(program.endowment_holdings(endowment_))[0], true};

  std::vector<double> theta(program.members(), 0.0);
  for (std::size_t j : free) theta[j] = 1.0 / static_cast<double>(free.size());
  const DualSolution sol = DualSolver(program, free, true).solve(std::move(theta));
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t j : free) lowest = std::min(lowest, sol.point.gains[j]);
  // the dual value bounds the max-min from above
  const bool tight = sol.point.value - lowest <= 1e3 * kStallTolerance;
  return {lowest, sol.converged && tight};
}

MaxMinResult BlockingAnalyzer::max_min_gain(Coalition c, EvaluationMode mode) const {
  return max_min_gain_excluding(c, mode, 32);
}

BlockingResult BlockingAnalyzer::best_improvement(Coalition c, EvaluationMode mode,
                                                  std::size_t target) const {
  if (!c.contains(target)) throw std::invalid_argument("target must belong to the coalition");
  const CoalitionProgram program(*this, c, mode);
  const std::size_t t = program.member_index(target);

  BlockingResult result;
  result.reference_value = program.reference(t);
  const auto finish = [&](const std::vector<double>& gains) {
    result.improvement = gains[t];
    result.absolute_improvement = gains[t] * program.scale(t);
    result.max_violation = 0.0;
    for (std::size_t j = 0; j < gains.size(); ++j)
      if (j != t) result.max_violation = std::max(result.max_violation, -gains[j]);
  };

  if (program.members() == 1) {
    // the coalition can only consume its own endowment
    finish(program.gains(program.endowment_holdings(endowment_)));
    result.feasible = true;
    result.converged = true;
    return result;
  }

  // Can the other members be kept whole at all?
  const MaxMinResult others = max_min_gain_excluding(c, mode, target);
  if (!others.converged) return result;
  if (others.min_gain < -options_.feasibility_tolerance) {
    result.improvement = result.absolute_improvement = kNaN;
    result.max_violation = -others.min_gain;
    result.converged = true;
    return result;
  }

  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < program.members(); ++j)
    if (j != t) free.push_back(j);
  const DualSolver solver(program, free, false);
  auto rng = make_stream(options_.seed, "blocking-restart",
                         {c.mask(), target, mode.ex_ante ? 0u : mode.state + 1});
  std::exponential_distribution<double> unit(1.0);

  std::optional<DualSolution> best;
  for (std::size_t start = 0; start < std::max<std::size_t>(1, options_.restarts); ++start) {
    std::vector<double> theta(program.members(), 1.0);
    if (start > 0)
      for (std::size_t j : free) theta[j] = unit(rng);
    DualSolution sol = solver.solve(std::move(theta));
    if (sol.diverged) continue;
    double violation = 0.0;
    for (std::size_t j : free) violation = std::max(violation, -sol.point.gains[j]);
    if (violation > options_.feasibility_tolerance) continue;
    if (!best || (sol.converged && !best->converged) ||
        (sol.converged == best->converged && sol.point.gains[t] > best->point.gains[t]))
      best = std::move(sol);
  }
  if (!best) return result;  // feasible by the max-min test but never reached: inconclusive
  finish(best->point.gains);
  result.feasible = true;
  result.converged = best->converged;
  return result;
}

BlockingResult best_improvement(const ValidatedScenario& scn, Coalition c,
                                const ShareProfile& reference, EvaluationMode mode,
                                std::size_t target, BlockingOptions options) {
  return BlockingAnalyzer(scn, reference, options).best_improvement(c, mode, target);
}

SscReport check_ssc(const ValidatedScenario& scn, const ShareProfile& allocation,
                    const SscOptions& options) {
  if (scn.agents() > options.max_agents)
    throw std::invalid_argument("coalition enumeration limited to " +
                                std::to_string(options.max_agents) + " agents");
  BlockingOptions blocking = options.blocking;
  if (blocking.seed == 0) blocking.seed = scn->seed;
  const BlockingAnalyzer analyzer(scn, allocation, blocking);

  SscReport report;
  report.clearing_error = max_clearing_error(allocation);
  report.clearing_ok = report.clearing_error <= options.clearing_tolerance;
  report.ex_post.resize(scn.states());

  bool weak_block = false;
  bool strong_block = false;
  std::vector<EvaluationMode> modes{EvaluationMode::ExAnte()};
  for (std::size_t s = 0; s < scn.states(); ++s) modes.push_back(EvaluationMode::ExPost(s));

  const std::uint32_t last = Coalition::grand(scn.agents()).mask();
  for (const EvaluationMode& mode : modes) {
    auto& bucket = mode.ex_ante ? report.ex_ante : report.ex_post[mode.state];
    for (std::uint32_t mask = 1; mask <= last; ++mask) {
      const Coalition c(mask);
      StrongEntry strong{c, mode, analyzer.max_min_gain(c, mode)};
      report.inconclusive = report.inconclusive || !strong.result.converged;
      strong_block = strong_block || strong.result.min_gain > options.tol;
      report.strong.push_back(strong);

      for (std::size_t target : c.members()) {
        SscEntry entry{c, target, mode, analyzer.best_improvement(c, mode, target)};
        report.inconclusive = report.inconclusive || !entry.result.converged;
        if (entry.result.feasible) {
          weak_block = weak_block || entry.result.improvement > options.tol;
          if (!report.worst_offender ||
              entry.result.improvement > report.worst_offender->result.improvement)
            report.worst_offender = entry;
        }
        bucket.push_back(entry);
      }
    }
  }
  report.weak_verdict = !weak_block && !report.inconclusive;
  report.strong_verdict = !strong_block && !report.inconclusive;
  report.verdict = report.clearing_ok && report.weak_verdict && report.strong_verdict;
  return report;
}

void write_ssc_csv(std::ostream& os, const SscReport& report) {
  os << "coalition,members,target,mode,status,improvement,normalized\n";
  const auto row = [&os](const SscEntry& e) {
    const char* status = !e.result.converged ? "inconclusive"
                         : e.result.feasible ? "feasible"
                                             : "infeasible";
    os << e.coalition.mask() << ',' << '"' << e.coalition.label() << '"' << ',' << e.target + 1
       << ',' << e.mode.label() << ',' << status << ',';
    if (e.result.feasible)
      os << csv::real(e.result.improvement) << ',' << csv::real(1.0 + e.result.improvement);
    else
      os << ',';
    os << '\n';
  };
  for (const SscEntry& e : report.ex_ante) row(e);
  for (const auto& state : report.ex_post)
    for (const SscEntry& e : state) row(e);
}

}  // namespace stocore

// Copyright 2026 The etamix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "etamix/construction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "etamix/error.hpp"

namespace etamix {

ValidRow::ValidRow(std::size_t n, std::size_t k, std::vector<double> h) : n_(n), k_(k), h_(std::move(h)) {
  if (k < 1 || k >= n) throw InvalidArgument("row index must satisfy 1 <= k < n");
  if (h_.size() != n - k) throw InvalidArgument("row " + std::to_string(k) + " needs " + std::to_string(n - k) + " entries");
  for (std::size_t x = 0; x < h_.size(); ++x) {
    if (!(h_[x] >= 0.0 && h_[x] <= 1.0)) throw InvalidArgument("row entries must lie in [0, 1]");
    if (x > 0 && h_[x] > h_[x - 1]) throw InvalidArgument("row entries must be nonincreasing");
  }
}

double ConstructionTrace::max_deviation(const ValidRow& row) const {
  double worst = 0.0;
  for (const auto& s : steps) worst = std::max(worst, std::abs(s.achieved - row.at(s.t)));
  return worst;
}

namespace {

void check_binary(const FiniteMeasure& mu, std::size_t k, std::size_t t) {
  if (mu.q() != 2) throw InvalidArgument("reweighting is defined on binary sequences only");
  if (k < 1 || k >= t || t > mu.n()) throw InvalidArgument("reweighting requires 1 <= k < t <= n");
}

}  // namespace

Reweighted reweight_with_alpha(const FiniteMeasure& mu, std::size_t k, std::size_t t, double v) {
  check_binary(mu, k, t);
  if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("reweighting parameter must lie in [0, 1]");
  const std::size_t n = mu.n();
  const std::size_t shift_k = n - k;
  const std::size_t shift_t = n - t;
  std::vector<double> weights(mu.size());
  for (std::size_t x = 0; x < mu.size(); ++x) {
    const bool same = ((x >> shift_k) & 1U) == ((x >> shift_t) & 1U);
    weights[x] = (same ? v : 1.0 - v) * mu[x];
  }
  const double mass = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (mass <= 0.0) throw InvalidArgument("reweighting annihilates all mass");
  return {from_weights(mu.space(), std::move(weights)), 1.0 / mass};
}

FiniteMeasure reweight(const FiniteMeasure& mu, std::size_t k, std::size_t t, double v) {
  return reweight_with_alpha(mu, k, t, v).measure;
}

double row_objective(const FiniteMeasure& mu, std::size_t k, std::size_t t, double v) {
  return eta_bar(reweight(mu, k, t, v), k, t);
}

SolveResult solve_v(const FiniteMeasure& mu, std::size_t k, std::size_t t, double target,
                    const SolverOptions& options) {
  auto finish = [&](double v, int iterations, double achieved) {
    const double alpha = reweight_with_alpha(mu, k, t, v).alpha;
    return SolveResult{v, TraceStep{t, v, iterations, achieved, alpha}};
  };

  double lo = 0.5;
  double hi = 1.0;
  const double f_lo = row_objective(mu, k, t, lo);
  const double f_hi = row_objective(mu, k, t, hi);
  // When both endpoints hit (target 1 after an earlier column reached 1),
  // v = 1 couples x_t to x_k outright.
  if (std::abs(f_hi - target) <= options.tolerance) return finish(hi, 0, f_hi);
  if (std::abs(f_lo - target) <= options.tolerance) return finish(lo, 0, f_lo);
  if (!(f_lo < target && target < f_hi)) {
    throw BracketError("cannot bracket target " + std::to_string(target) + " for column " + std::to_string(t) +
                       ": f(1/2) = " + std::to_string(f_lo) + ", f(1) = " + std::to_string(f_hi));
  }

  for (int it = 1; it <= options.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = row_objective(mu, k, t, mid);
    if (std::abs(f_mid - target) <= options.tolerance) return finish(mid, it, f_mid);
    if (f_mid < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double mid = 0.5 * (lo + hi);
  return finish(mid, options.max_iterations, row_objective(mu, k, t, mid));
}

bool check_conditional_preservation(const FiniteMeasure& before, const FiniteMeasure& after, std::size_t k,
                                    std::size_t t, double tol) {
  if (before.space() != after.space()) throw InvalidArgument("measures live on different spaces");
  const std::size_t n = before.n();
  if (k < 1 || k >= t || t > n) throw InvalidArgument("preservation check requires 1 <= k < t <= n");
  const std::size_t prefixes = before.space().block(k);
  const std::size_t width = before.space().block(n - k);
  const std::size_t law_len = before.space().block(n - t + 1);
  const std::size_t middle = width / law_len;

  auto law = [&](const FiniteMeasure& mu, std::size_t y, double& mass) {
    std::vector<double> out(law_len, 0.0);
    mass = 0.0;
    for (std::size_t m = 0; m < middle; ++m) {
      for (std::size_t s = 0; s < law_len; ++s) out[s] += mu[y * width + m * law_len + s];
    }
    for (double p : out) mass += p;
    return out;
  };

  for (std::size_t y = 0; y < prefixes; ++y) {
    double mass_b = 0.0;
    double mass_a = 0.0;
    const auto lb = law(before, y, mass_b);
    const auto la = law(after, y, mass_a);
    if (mass_b <= 0.0 && mass_a <= 0.0) continue;
    if (mass_b <= 0.0 || mass_a <= 0.0) return false;
    for (std::size_t s = 0; s < law_len; ++s) {
      if (std::abs(lb[s] / mass_b - la[s] / mass_a) > tol) return false;
    }
  }
  return true;
}

PureRowResult pure_row_measure(const ValidRow& row, const SolverOptions& options, StepOrder order) {
  const std::size_t n = row.n();
  const std::size_t k = row.k();
  FiniteMeasure current = uniform(SeqSpace(2, n));
  ConstructionTrace trace;
  trace.k = k;

  std::vector<std::size_t> columns;
  for (std::size_t t = n; t > k; --t) columns.push_back(t);
  if (order == StepOrder::kForward) std::reverse(columns.begin(), columns.end());

  std::size_t previous = 0;
  for (std::size_t t : columns) {
    auto solved = solve_v(current, k, t, row.at(t), options);
    FiniteMeasure next = reweight(current, k, t, solved.v_star);
    if (previous != 0) solved.step.conditional_preserved = check_conditional_preservation(current, next, k, previous);
    trace.steps.push_back(solved.step);
    current = std::move(next);
    previous = t;
  }
  return {std::move(current), std::move(trace)};
}

Construction construct_from_target(const MixingMatrix& h, const SolverOptions& options) {
  const auto violations = validate_target(h);
  if (!violations.empty()) {
    std::vector<std::string> cells;
    for (const auto& v : violations) cells.push_back(v.describe());
    throw InvalidTarget("target matrix violates (P1)-(P3)", std::move(cells));
  }
  const std::size_t n = h.n();
  if (n < 1) throw InvalidArgument("target matrix is empty");
  if (n == 1) return {ProductMeasure({uniform(SeqSpace(2, 1))}), {}};

  std::vector<FiniteMeasure> components;
  std::vector<ConstructionTrace> traces;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> values;
    for (std::size_t j = k + 1; j <= n; ++j) values.push_back(h(k, j));
    auto built = pure_row_measure(ValidRow(n, k, std::move(values)), options);
    components.push_back(std::move(built.measure));
    traces.push_back(std::move(built.trace));
  }
  return {ProductMeasure(std::move(components)), std::move(traces)};
}

}  // namespace etamix

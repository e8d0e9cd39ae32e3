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

#pragma once

// Backward reweighting construction of measures on {0,1}^n whose mixing
// matrix is zero except in one prescribed row, and the parallel-product
// composer that realizes any valid target matrix.

#include <cstddef>
#include <vector>

#include "etamix/measure.hpp"
#include "etamix/mixing.hpp"
#include "etamix/products.hpp"

namespace etamix {

/// Row k of a target matrix: h[0] is the entry for column k+1, h.back() for
/// column n. Requires 1 <= k < n and 1 >= h[0] >= h[1] >= ... >= 0.
class ValidRow {
 public:
  ValidRow(std::size_t n, std::size_t k, std::vector<double> h);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  /// Target for column j, k < j <= n.
  double at(std::size_t j) const { return h_[j - k_ - 1]; }
  const std::vector<double>& values() const { return h_; }

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<double> h_;
};

struct SolverOptions {
  double tolerance = 1e-9;
  int max_iterations = 80;
};

/// Diagnostics for one reweighting step on column t.
struct TraceStep {
  std::size_t t;
  double v_star;
  int iterations;
  double achieved;
  double alpha;
  /// Whether the law of X_{t+1}^n given X_1^k survived this step unchanged
  /// (vacuously true for t = n).
  bool conditional_preserved = true;
};

struct ConstructionTrace {
  std::size_t k = 0;
  std::vector<TraceStep> steps;

  double max_deviation(const ValidRow& row) const;
};

struct Reweighted {
  FiniteMeasure measure;
  double alpha;
};

/// alpha * [v 1{x_k = x_t} mu(x) + (1 - v) 1{x_k != x_t} mu(x)] on {0,1}^n,
/// alpha being the reciprocal of the reweighted mass.
Reweighted reweight_with_alpha(const FiniteMeasure& mu, std::size_t k, std::size_t t, double v);
FiniteMeasure reweight(const FiniteMeasure& mu, std::size_t k, std::size_t t, double v);

/// eta_bar(k, t) of reweight(mu, k, t, v).
double row_objective(const FiniteMeasure& mu, std::size_t k, std::size_t t, double v);

struct SolveResult {
  double v_star;
  TraceStep step;
};

/// Bisection for v in [1/2, 1] with row_objective(v) = target, keeping a sign
/// bracket of f(v) - target. Endpoints within tolerance are returned as is,
/// v = 1 taking precedence.
/// Throws BracketError when the target lies outside [f(1/2), f(1)].
SolveResult solve_v(const FiniteMeasure& mu, std::size_t k, std::size_t t, double target,
                    const SolverOptions& options = {});

/// True iff L(X_t^n | X_1^k = y) agrees within `tol` between both measures
/// for every y that has positive mass under either of them.
bool check_conditional_preservation(const FiniteMeasure& before, const FiniteMeasure& after, std::size_t k,
                                    std::size_t t, double tol = 1e-10);

enum class StepOrder {
  kBackward,  // t = n, n-1, ..., k+1
  kForward,   // t = k+1, ..., n; does not preserve earlier columns
};

struct PureRowResult {
  FiniteMeasure measure;
  ConstructionTrace trace;
};

/// Measure on {0,1}^n with mixing row k equal to `row` and every other row 0.
PureRowResult pure_row_measure(const ValidRow& row, const SolverOptions& options = {},
                               StepOrder order = StepOrder::kBackward);

struct Construction {
  ProductMeasure measure;
  std::vector<ConstructionTrace> traces;
};

/// Realizes a target satisfying (P1)-(P3) as the parallel product of n-1
/// pure-row measures (product alphabet size 2^(n-1)). Throws InvalidTarget
/// listing the violations otherwise. For n = 1 the single component is the
/// uniform measure on {0,1}.
Construction construct_from_target(const MixingMatrix& h, const SolverOptions& options = {});

}  // namespace etamix

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

#include <cstddef>
#include <string>
#include <vector>

#include "etamix/measure.hpp"

namespace etamix {

/// n x n matrix of eta-mixing coefficients (or a target for them). Indices
/// are 1-based; only the strict upper triangle is meaningful.
class MixingMatrix {
 public:
  MixingMatrix() = default;
  explicit MixingMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

  std::size_t n() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[(i - 1) * n_ + (j - 1)]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[(i - 1) * n_ + (j - 1)]; }

  /// Largest absolute entrywise difference; matrices must share n.
  double max_abs_diff(const MixingMatrix& other) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

/// One cell that breaks a structural property of mixing matrices.
struct Violation {
  enum class Kind { kLowerTriangle, kRange, kIncreasingRow };
  Kind kind;
  std::size_t i;
  std::size_t j;
  /// Second column for kIncreasingRow (the cell that exceeds (i, j)); 0 otherwise.
  std::size_t j2 = 0;
  double value;

  std::string describe() const;
};

/// Checks the zero lower triangle exactly, the [0, 1] range inclusively and
/// nonincreasing rows with a nonstrict comparison. Empty result = valid.
/// `row_slack` loosens the row check for realized (computed) matrices.
std::vector<Violation> validate_target(const MixingMatrix& h, double row_slack = 0.0);

/// TV distance between the laws of X_j^n given X_1^i = y w and y w'.
/// Throws ZeroProbabilityPrefix if either prefix has no mass.
double eta(const FiniteMeasure& mu, std::size_t i, std::size_t j, std::span<const Symbol> y,
           Symbol w, Symbol w_prime);

/// Max of eta over all admissible (y, w, w'); 0 when no pair is admissible.
double eta_bar(const FiniteMeasure& mu, std::size_t i, std::size_t j);

MixingMatrix mixing_matrix(const FiniteMeasure& mu);

/// True iff every row of mixing_matrix(mu) is nonincreasing within 1e-12.
bool check_monotonicity(const FiniteMeasure& mu);

/// Uniform-mixing coefficient for gap g, restricted to single-prefix pasts:
/// max over i and positive-mass y in Sigma^i of the TV distance between
/// L(X_{i+g}^n | X_1^i = y) and L(X_{i+g}^n).
double phi(const FiniteMeasure& mu, std::size_t gap);

/// phi for every gap 1..n-1 (index 0 holds gap 1).
std::vector<double> phi_vector(const FiniteMeasure& mu);

/// eta_bar(i, j) <= 2 phi(j - i) + 1e-9 for every i < j.
bool check_samson_inequality(const FiniteMeasure& mu);

struct ConjectureRow {
  std::size_t measure_id;
  std::size_t n;
  std::size_t q;
  double lhs;  // half the sum of phi over all gaps
  double rhs;  // 1 + largest row sum of the mixing matrix
  bool satisfied;
};

/// Evaluates both sides of the phi/eta row-sum conjecture for each measure.
/// Reports; never asserts.
std::vector<ConjectureRow> conjecture_scan(std::span<const FiniteMeasure> mus);

}  // namespace etamix

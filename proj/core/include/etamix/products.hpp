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
#include <vector>

#include "etamix/measure.hpp"
#include "etamix/mixing.hpp"

namespace etamix {

/// Independent concatenation: (mu + nu)(xy) = mu(x) nu(y). Alphabets must match.
FiniteMeasure series_product(const FiniteMeasure& mu, const FiniteMeasure& nu,
                             std::size_t state_cap = kDefaultStateCap);

/// Coordinatewise pairing of independent sequences of equal length, kept in
/// factored form. The product symbol at each position is the mixed-radix
/// number of the component symbols, component 0 most significant.
class ProductMeasure {
 public:
  explicit ProductMeasure(std::vector<FiniteMeasure> components);

  std::size_t n() const { return n_; }
  const std::vector<FiniteMeasure>& components() const { return components_; }
  /// Product alphabet size, or 0 if it overflows.
  std::size_t alphabet_size() const;
  /// Dense state count of the materialized joint, or 0 if it overflows.
  std::size_t state_count() const;

 private:
  std::size_t n_;
  std::vector<FiniteMeasure> components_;
};

ProductMeasure parallel_product(const FiniteMeasure& mu, const FiniteMeasure& nu);
ProductMeasure parallel_product(const ProductMeasure& pm, const FiniteMeasure& nu);

FiniteMeasure materialize(const ProductMeasure& pm, std::size_t state_cap = kDefaultStateCap);

/// Per-cell bounds on the mixing matrix of a parallel product:
/// max over components <= eta_bar <= min(1, sum over components).
struct FactoredMixing {
  MixingMatrix lower;
  MixingMatrix upper;
  /// True when every cell has at most one component above `disjoint_tol`,
  /// in which case `lower` is the exact matrix.
  bool exact;

  const MixingMatrix& value() const { return lower; }
};

FactoredMixing factored_mixing_matrix(const ProductMeasure& pm, double disjoint_tol = 1e-9);

/// Same bounds from already-computed component matrices.
FactoredMixing combine_component_matrices(std::span<const MixingMatrix> parts, double disjoint_tol = 1e-9);

}  // namespace etamix

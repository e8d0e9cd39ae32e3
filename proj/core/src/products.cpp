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

#include "etamix/products.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "etamix/error.hpp"

namespace etamix {

FiniteMeasure series_product(const FiniteMeasure& mu, const FiniteMeasure& nu, std::size_t state_cap) {
  if (mu.q() != nu.q()) throw InvalidArgument("series product requires equal alphabet sizes");
  const SeqSpace space(mu.q(), mu.n() + nu.n(), state_cap);
  std::vector<double> probs;
  probs.reserve(space.size());
  for (double a : mu.probs()) {
    for (double b : nu.probs()) probs.push_back(a * b);
  }
  return from_weights(space, std::move(probs));
}

ProductMeasure::ProductMeasure(std::vector<FiniteMeasure> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw InvalidArgument("a product measure needs at least one component");
  n_ = components_.front().n();
  for (const auto& c : components_) {
    if (c.n() != n_) throw InvalidArgument("parallel product components must share the sequence length");
  }
}

std::size_t ProductMeasure::alphabet_size() const {
  std::size_t q = 1;
  for (const auto& c : components_) {
    if (q > std::numeric_limits<std::size_t>::max() / c.q()) return 0;
    q *= c.q();
  }
  return q;
}

std::size_t ProductMeasure::state_count() const {
  const std::size_t q = alphabet_size();
  return q == 0 ? 0 : checked_pow(q, n_);
}

ProductMeasure parallel_product(const FiniteMeasure& mu, const FiniteMeasure& nu) {
  return ProductMeasure({mu, nu});
}

ProductMeasure parallel_product(const ProductMeasure& pm, const FiniteMeasure& nu) {
  auto parts = pm.components();
  parts.push_back(nu);
  return ProductMeasure(std::move(parts));
}

namespace {

// Index offset in the joint space contributed by each sequence of one factor.
// `inner` is the product alphabet size of all later factors, `joint_q` the
// full product alphabet size.
std::vector<std::size_t> spread_indices(const FiniteMeasure& mu, std::size_t inner, std::size_t joint_q) {
  std::vector<std::size_t> out(mu.size());
  for (std::size_t x = 0; x < mu.size(); ++x) {
    std::size_t rest = x;
    std::size_t offset = 0;
    std::size_t scale = inner;
    for (std::size_t p = 0; p < mu.n(); ++p) {
      offset += (rest % mu.q()) * scale;
      rest /= mu.q();
      scale *= joint_q;
    }
    out[x] = offset;
  }
  return out;
}

}  // namespace

FiniteMeasure materialize(const ProductMeasure& pm, std::size_t state_cap) {
  const std::size_t joint_q = pm.alphabet_size();
  const std::size_t states = pm.state_count();
  if (states == 0 || states > state_cap) {
    throw StateCapExceeded("materialized product exceeds the state cap of " + std::to_string(state_cap), state_cap);
  }
  const SeqSpace space(joint_q, pm.n(), state_cap);

  std::vector<double> probs{1.0};
  std::vector<std::size_t> offsets{0};
  std::size_t inner = joint_q;
  for (const auto& c : pm.components()) {
    inner /= c.q();
    const auto spread = spread_indices(c, inner, joint_q);
    std::vector<double> next_probs;
    std::vector<std::size_t> next_offsets;
    next_probs.reserve(probs.size() * c.size());
    next_offsets.reserve(probs.size() * c.size());
    for (std::size_t a = 0; a < probs.size(); ++a) {
      for (std::size_t x = 0; x < c.size(); ++x) {
        next_probs.push_back(probs[a] * c[x]);
        next_offsets.push_back(offsets[a] + spread[x]);
      }
    }
    probs = std::move(next_probs);
    offsets = std::move(next_offsets);
  }

  std::vector<double> joint(space.size(), 0.0);
  for (std::size_t a = 0; a < probs.size(); ++a) joint[offsets[a]] = probs[a];
  return from_weights(space, std::move(joint));
}

FactoredMixing combine_component_matrices(std::span<const MixingMatrix> parts, double disjoint_tol) {
  if (parts.empty()) throw InvalidArgument("no component matrices to combine");
  const std::size_t n = parts.front().n();
  FactoredMixing out{MixingMatrix(n), MixingMatrix(n), true};
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      double hi = 0.0;
      double lo = 0.0;
      int active = 0;
      for (const auto& m : parts) {
        lo = std::max(lo, m(i, j));
        hi += m(i, j);
        if (m(i, j) > disjoint_tol) ++active;
      }
      out.lower(i, j) = lo;
      out.upper(i, j) = std::min(1.0, hi);
      if (active > 1) out.exact = false;
    }
  }
  return out;
}

FactoredMixing factored_mixing_matrix(const ProductMeasure& pm, double disjoint_tol) {
  std::vector<MixingMatrix> parts;
  parts.reserve(pm.components().size());
  for (const auto& c : pm.components()) parts.push_back(mixing_matrix(c));
  return combine_component_matrices(parts, disjoint_tol);
}

}  // namespace etamix

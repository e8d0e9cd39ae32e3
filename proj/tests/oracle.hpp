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

// Test-only reference computations written directly from the definitions,
// sharing no code with the library's strided implementations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "etamix/measure.hpp"
#include "etamix/mixing.hpp"

namespace etamix::testing {

inline FiniteMeasure random_measure(std::mt19937_64& rng, std::size_t q, std::size_t n) {
  const SeqSpace space(q, n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(space.size());
  for (double& x : w) x = u(rng);
  return from_weights(space, std::move(w));
}

/// Random measure with roughly `zero_fraction` of atoms removed.
inline FiniteMeasure random_sparse_measure(std::mt19937_64& rng, std::size_t q, std::size_t n, double zero_fraction) {
  const SeqSpace space(q, n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(space.size());
  for (double& x : w) x = u(rng) < zero_fraction ? 0.0 : u(rng);
  if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) w[0] = 1.0;
  return from_weights(space, std::move(w));
}

inline MixingMatrix random_valid_target(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MixingMatrix h(n);
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<double> row(n - i);
    for (double& x : row) x = u(rng);
    std::sort(row.begin(), row.end(), std::greater<>());
    for (std::size_t j = i + 1; j <= n; ++j) h(i, j) = row[j - i - 1];
  }
  return h;
}

/// X_1 uniform on {0,1}, every later coordinate equal to X_1.
inline FiniteMeasure copy_chain(std::size_t n) {
  const SeqSpace space(2, n);
  std::vector<double> w(space.size(), 0.0);
  w.front() = 0.5;
  w.back() = 0.5;
  return FiniteMeasure(space, std::move(w));
}

/// X_1 uniform on {0,1}, X_2 = X_1 with probability `p_same`.
inline FiniteMeasure correlated_pair(double p_same) {
  return FiniteMeasure(SeqSpace(2, 2), {0.5 * p_same, 0.5 * (1 - p_same), 0.5 * (1 - p_same), 0.5 * p_same});
}

inline std::size_t digits_to_index(const std::vector<Symbol>& xs, std::size_t q) {
  std::size_t index = 0;
  for (Symbol s : xs) index = index * q + s;
  return index;
}

/// Unnormalized law of X_first..X_n restricted to sequences whose first
/// prefix.size() symbols equal `prefix`, by scanning every atom.
inline std::map<std::size_t, double> brute_suffix_law(const FiniteMeasure& mu, const std::vector<Symbol>& prefix,
                                                      std::size_t first, double& mass) {
  std::map<std::size_t, double> law;
  mass = 0.0;
  for (std::size_t x = 0; x < mu.size(); ++x) {
    const Sequence seq = mu.space().decode(x);
    if (!std::equal(prefix.begin(), prefix.end(), seq.begin())) continue;
    const std::vector<Symbol> tail(seq.begin() + static_cast<long>(first - 1), seq.end());
    law[digits_to_index(tail, mu.q())] += mu[x];
    mass += mu[x];
  }
  return law;
}

inline double brute_tv(const std::map<std::size_t, double>& a, double ma, const std::map<std::size_t, double>& b,
                       double mb) {
  std::map<std::size_t, double> diff;
  for (const auto& [k, v] : a) diff[k] += v / ma;
  for (const auto& [k, v] : b) diff[k] -= v / mb;
  double sum = 0.0;
  for (const auto& [k, v] : diff) sum += std::abs(v);
  return 0.5 * sum;
}

inline double brute_eta_bar(const FiniteMeasure& mu, std::size_t i, std::size_t j) {
  const std::size_t q = mu.q();
  double best = 0.0;
  std::size_t ys = 1;
  for (std::size_t p = 1; p < i; ++p) ys *= q;
  for (std::size_t y = 0; y < ys; ++y) {
    std::vector<Symbol> prefix(i - 1);
    std::size_t rest = y;
    for (std::size_t p = i - 1; p-- > 0;) {
      prefix[p] = static_cast<Symbol>(rest % q);
      rest /= q;
    }
    for (Symbol w = 0; w < q; ++w) {
      for (Symbol w2 = 0; w2 < q; ++w2) {
        auto a = prefix;
        a.push_back(w);
        auto b = prefix;
        b.push_back(w2);
        double ma = 0.0;
        double mb = 0.0;
        const auto la = brute_suffix_law(mu, a, j, ma);
        const auto lb = brute_suffix_law(mu, b, j, mb);
        if (ma <= 0.0 || mb <= 0.0) continue;
        best = std::max(best, brute_tv(la, ma, lb, mb));
      }
    }
  }
  return best;
}

inline MixingMatrix brute_mixing_matrix(const FiniteMeasure& mu) {
  MixingMatrix h(mu.n());
  for (std::size_t i = 1; i < mu.n(); ++i) {
    for (std::size_t j = i + 1; j <= mu.n(); ++j) h(i, j) = brute_eta_bar(mu, i, j);
  }
  return h;
}

/// sup over past events A (all nonempty unions of length-i prefixes with
/// positive mass when `atoms_only` is false) and every future event B of
/// |P(B | A) - P(B)|. Feasible for tiny spaces only.
inline double brute_phi(const FiniteMeasure& mu, std::size_t gap, bool atoms_only) {
  const std::size_t q = mu.q();
  const std::size_t n = mu.n();
  double best = 0.0;
  for (std::size_t i = 1; i + gap <= n; ++i) {
    const std::size_t start = i + gap;
    const std::size_t past_count = mu.space().block(i);
    const std::size_t future_count = mu.space().block(n - start + 1);
    // joint[p][f] = P(X_1^i = p, X_start^n = f)
    std::vector<std::vector<double>> joint(past_count, std::vector<double>(future_count, 0.0));
    for (std::size_t x = 0; x < mu.size(); ++x) {
      const Sequence seq = mu.space().decode(x);
      const std::vector<Symbol> past(seq.begin(), seq.begin() + static_cast<long>(i));
      const std::vector<Symbol> future(seq.begin() + static_cast<long>(start - 1), seq.end());
      joint[digits_to_index(past, q)][digits_to_index(future, q)] += mu[x];
    }
    std::vector<double> future_marginal(future_count, 0.0);
    for (const auto& row : joint) {
      for (std::size_t f = 0; f < future_count; ++f) future_marginal[f] += row[f];
    }
    const std::uint64_t past_sets = atoms_only ? past_count : (std::uint64_t{1} << past_count) - 1;
    for (std::uint64_t a = 0; a < past_sets; ++a) {
      const std::uint64_t mask = atoms_only ? (std::uint64_t{1} << a) : a + 1;
      std::vector<double> joint_a(future_count, 0.0);
      double pa = 0.0;
      for (std::size_t p = 0; p < past_count; ++p) {
        if (!(mask >> p & 1U)) continue;
        for (std::size_t f = 0; f < future_count; ++f) joint_a[f] += joint[p][f];
      }
      for (double v : joint_a) pa += v;
      if (pa <= 0.0) continue;
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << future_count); ++b) {
        double pb = 0.0;
        double pab = 0.0;
        for (std::size_t f = 0; f < future_count; ++f) {
          if (b >> f & 1U) {
            pb += future_marginal[f];
            pab += joint_a[f];
          }
        }
        best = std::max(best, std::abs(pab / pa - pb));
      }
    }
  }
  return best;
}

}  // namespace etamix::testing

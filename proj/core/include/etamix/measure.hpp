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

// Dense probability measures on finite sequence spaces.
//
// A sequence (x_1, ..., x_n) over an alphabet {0, ..., q-1} is stored at the
// big-endian mixed-radix index sum_i x_i * q^(n-i), so x_1 is the most
// significant digit. Sequence positions are 1-based throughout the public API.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace etamix {

using Symbol = std::uint32_t;
using Sequence = std::vector<Symbol>;

/// Default bound on the number of dense entries a space may hold (2^24).
inline constexpr std::size_t kDefaultStateCap = std::size_t{1} << 24;

/// Absolute tolerance on the total mass of a measure.
inline constexpr double kMassTolerance = 1e-12;

/// Returns base^exponent, or 0 when it overflows size_t.
std::size_t checked_pow(std::size_t base, std::size_t exponent);

class SeqSpace {
 public:
  /// Throws InvalidArgument for q < 1 or n < 1 and StateCapExceeded when
  /// q^n is larger than `state_cap`.
  SeqSpace(std::size_t q, std::size_t n, std::size_t state_cap = kDefaultStateCap);

  std::size_t q() const { return q_; }
  std::size_t n() const { return n_; }
  std::size_t size() const { return size_; }

  /// Number of sequences of length `len` over this alphabet.
  std::size_t block(std::size_t len) const;

  std::size_t encode(std::span<const Symbol> seq) const;
  Sequence decode(std::size_t index) const;

  friend bool operator==(const SeqSpace&, const SeqSpace&) = default;

 private:
  std::size_t q_;
  std::size_t n_;
  std::size_t size_;
};

/// Real vector of arbitrary sign, compared against measures in tv_distance.
using SignedVector = std::vector<double>;

class FiniteMeasure {
 public:
  /// Takes ownership of `probs`. Every entry must be nonnegative and the sum
  /// must be 1 within kMassTolerance; the entries are not rescaled.
  FiniteMeasure(SeqSpace space, std::vector<double> probs);

  const SeqSpace& space() const { return space_; }
  std::size_t q() const { return space_.q(); }
  std::size_t n() const { return space_.n(); }
  std::size_t size() const { return probs_.size(); }

  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t index) const { return probs_[index]; }
  double at(std::span<const Symbol> seq) const { return probs_[space_.encode(seq)]; }

 private:
  SeqSpace space_;
  std::vector<double> probs_;
};

FiniteMeasure uniform(const SeqSpace& space);

FiniteMeasure point_mass(const SeqSpace& space, std::size_t index);

/// Normalizes nonnegative weights. Throws on a wrong length, a negative or
/// non-finite entry, or zero total mass.
FiniteMeasure from_weights(const SeqSpace& space, std::vector<double> weights);

/// Half the l1 distance. Throws InvalidArgument on a dimension mismatch.
double tv_distance(std::span<const double> p, std::span<const double> r);
double tv_distance(const FiniteMeasure& p, const FiniteMeasure& r);

/// Mass of all sequences starting with `prefix` (length 1..n).
double prefix_prob(const FiniteMeasure& mu, std::span<const Symbol> prefix);

/// Law of X_{i+1}^n given X_1^i = prefix, with i = prefix.size() in [1, n).
/// Throws ZeroProbabilityPrefix when the prefix carries no mass.
FiniteMeasure conditional(const FiniteMeasure& mu, std::span<const Symbol> prefix);

/// Law of X_first^last, 1 <= first <= last <= n.
FiniteMeasure marginal(const FiniteMeasure& mu, std::size_t first, std::size_t last);

}  // namespace etamix

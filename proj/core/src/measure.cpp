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

#include "etamix/measure.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "etamix/error.hpp"

namespace etamix {

std::size_t checked_pow(std::size_t base, std::size_t exponent) {
  std::size_t result = 1;
  for (std::size_t e = 0; e < exponent; ++e) {
    if (base != 0 && result > std::numeric_limits<std::size_t>::max() / base) return 0;
    result *= base;
  }
  return result;
}

SeqSpace::SeqSpace(std::size_t q, std::size_t n, std::size_t state_cap) : q_(q), n_(n) {
  if (q < 1) throw InvalidArgument("alphabet size must be at least 1");
  if (n < 1) throw InvalidArgument("sequence length must be at least 1");
  size_ = checked_pow(q, n);
  if (size_ == 0 || size_ > state_cap) {
    throw StateCapExceeded("sequence space " + std::to_string(q) + "^" + std::to_string(n) +
                               " exceeds the state cap of " + std::to_string(state_cap),
                           state_cap);
  }
}

std::size_t SeqSpace::block(std::size_t len) const { return checked_pow(q_, len); }

std::size_t SeqSpace::encode(std::span<const Symbol> seq) const {
  if (seq.size() != n_) throw InvalidArgument("sequence length does not match the space");
  std::size_t index = 0;
  for (Symbol s : seq) {
    if (s >= q_) throw InvalidArgument("symbol outside the alphabet");
    index = index * q_ + s;
  }
  return index;
}

Sequence SeqSpace::decode(std::size_t index) const {
  Sequence seq(n_);
  for (std::size_t p = n_; p-- > 0;) {
    seq[p] = static_cast<Symbol>(index % q_);
    index /= q_;
  }
  return seq;
}

FiniteMeasure::FiniteMeasure(SeqSpace space, std::vector<double> probs)
    : space_(space), probs_(std::move(probs)) {
  if (probs_.size() != space_.size()) {
    throw InvalidArgument("probability vector has length " + std::to_string(probs_.size()) +
                          ", expected " + std::to_string(space_.size()));
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("negative or non-finite probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw InvalidArgument("probabilities sum to " + std::to_string(total));
  }
}

FiniteMeasure uniform(const SeqSpace& space) {
  return FiniteMeasure(space, std::vector<double>(space.size(), 1.0 / static_cast<double>(space.size())));
}

FiniteMeasure point_mass(const SeqSpace& space, std::size_t index) {
  if (index >= space.size()) throw InvalidArgument("point mass index out of range");
  std::vector<double> probs(space.size(), 0.0);
  probs[index] = 1.0;
  return FiniteMeasure(space, std::move(probs));
}

FiniteMeasure from_weights(const SeqSpace& space, std::vector<double> weights) {
  if (weights.size() != space.size()) throw InvalidArgument("weight vector has the wrong length");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("negative or non-finite weight");
    total += w;
  }
  if (total <= 0.0) throw InvalidArgument("zero total mass");
  for (double& w : weights) w /= total;
  return FiniteMeasure(space, std::move(weights));
}

double tv_distance(std::span<const double> p, std::span<const double> r) {
  if (p.size() != r.size()) throw InvalidArgument("tv_distance: dimension mismatch");
  double sum = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) sum += std::abs(p[x] - r[x]);
  return 0.5 * sum;
}

double tv_distance(const FiniteMeasure& p, const FiniteMeasure& r) {
  return tv_distance(p.probs(), r.probs());
}

namespace {

std::size_t prefix_index(const SeqSpace& space, std::span<const Symbol> prefix) {
  std::size_t index = 0;
  for (Symbol s : prefix) {
    if (s >= space.q()) throw InvalidArgument("symbol outside the alphabet");
    index = index * space.q() + s;
  }
  return index;
}

}  // namespace

double prefix_prob(const FiniteMeasure& mu, std::span<const Symbol> prefix) {
  if (prefix.empty() || prefix.size() > mu.n()) throw InvalidArgument("prefix length out of range");
  const std::size_t width = mu.space().block(mu.n() - prefix.size());
  const std::size_t start = prefix_index(mu.space(), prefix) * width;
  const auto probs = mu.probs().subspan(start, width);
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

FiniteMeasure conditional(const FiniteMeasure& mu, std::span<const Symbol> prefix) {
  if (prefix.empty() || prefix.size() >= mu.n()) {
    throw InvalidArgument("conditioning prefix length must lie in [1, n)");
  }
  const std::size_t width = mu.space().block(mu.n() - prefix.size());
  const std::size_t start = prefix_index(mu.space(), prefix) * width;
  const auto block = mu.probs().subspan(start, width);
  const double mass = std::accumulate(block.begin(), block.end(), 0.0);
  if (mass <= 0.0) throw ZeroProbabilityPrefix("unconditionable prefix: zero probability");
  std::vector<double> out(block.begin(), block.end());
  for (double& p : out) p /= mass;
  return from_weights(SeqSpace(mu.q(), mu.n() - prefix.size(), mu.size()), std::move(out));
}

FiniteMeasure marginal(const FiniteMeasure& mu, std::size_t first, std::size_t last) {
  const std::size_t n = mu.n();
  if (first < 1 || first > last || last > n) throw InvalidArgument("marginal positions out of range");
  const std::size_t kept = mu.space().block(last - first + 1);
  const std::size_t tail = mu.space().block(n - last);
  const std::size_t head = mu.space().block(first - 1);
  std::vector<double> out(kept, 0.0);
  const auto probs = mu.probs();
  std::size_t index = 0;
  for (std::size_t h = 0; h < head; ++h) {
    for (std::size_t m = 0; m < kept; ++m) {
      double acc = 0.0;
      for (std::size_t t = 0; t < tail; ++t) acc += probs[index++];
      out[m] += acc;
    }
  }
  return from_weights(SeqSpace(mu.q(), last - first + 1, mu.size()), std::move(out));
}

}  // namespace etamix

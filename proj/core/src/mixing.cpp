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

#include "etamix/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "etamix/error.hpp"

namespace etamix {

double MixingMatrix::max_abs_diff(const MixingMatrix& other) const {
  if (other.n_ != n_) throw InvalidArgument("mixing matrices differ in size");
  double worst = 0.0;
  for (std::size_t x = 0; x < entries_.size(); ++x) {
    worst = std::max(worst, std::abs(entries_[x] - other.entries_[x]));
  }
  return worst;
}

std::string Violation::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case Kind::kLowerTriangle:
      out << "(P1) nonzero entry on or below the diagonal at (" << i << ", " << j << ") = " << value;
      break;
    case Kind::kRange:
      out << "(P2) entry outside [0, 1] at (" << i << ", " << j << ") = " << value;
      break;
    case Kind::kIncreasingRow:
      out << "(P3) row " << i << " increases from column " << j << " to " << j2 << " (" << value << ")";
      break;
  }
  return out.str();
}

std::vector<Violation> validate_target(const MixingMatrix& h, double row_slack) {
  std::vector<Violation> out;
  const std::size_t n = h.n();
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const double v = h(i, j);
      if (i >= j) {
        if (v != 0.0) out.push_back({Violation::Kind::kLowerTriangle, i, j, 0, v});
      } else if (!(v >= 0.0 && v <= 1.0)) {
        out.push_back({Violation::Kind::kRange, i, j, 0, v});
      }
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (h(i, j + 1) > h(i, j) + row_slack) {
        out.push_back({Violation::Kind::kIncreasingRow, i, j, j + 1, h(i, j + 1) - h(i, j)});
      }
    }
  }
  return out;
}

namespace {

void check_pair(const FiniteMeasure& mu, std::size_t i, std::size_t j) {
  if (i < 1 || i >= j || j > mu.n()) throw InvalidArgument("mixing coefficient indices require 1 <= i < j <= n");
}

// Half-l1 distance between a/mass_a and b/mass_b.
double scaled_tv(std::span<const double> a, double mass_a, std::span<const double> b, double mass_b) {
  double sum = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) sum += std::abs(a[s] / mass_a - b[s] / mass_b);
  return 0.5 * sum;
}

// Sums out the leading `drop` coordinates of an unnormalized law of length
// `len`, in place; the result occupies the front of `law`.
void fold_leading(std::span<double> law, std::size_t q, std::size_t len, std::size_t drop) {
  for (std::size_t d = 0; d < drop; ++d) {
    std::size_t width = 1;
    for (std::size_t e = 1; e < len - d; ++e) width *= q;
    for (std::size_t a = 1; a < q; ++a) {
      for (std::size_t s = 0; s < width; ++s) law[s] += law[a * width + s];
    }
  }
}

// Row i of the mixing matrix: entry j - i - 1 holds eta_bar(i, j).
std::vector<double> mixing_row(const FiniteMeasure& mu, std::size_t i, std::size_t last_j) {
  const std::size_t q = mu.q();
  const std::size_t n = mu.n();
  const std::size_t prefixes = mu.space().block(i);
  const std::size_t width = mu.space().block(n - i);
  const auto probs = mu.probs();

  std::vector<double> laws(probs.begin(), probs.end());
  std::vector<double> mass(prefixes);
  for (std::size_t p = 0; p < prefixes; ++p) {
    mass[p] = std::accumulate(probs.begin() + p * width, probs.begin() + (p + 1) * width, 0.0);
  }

  std::vector<double> row;
  std::size_t law_len = width;
  for (std::size_t j = i + 1; j <= last_j; ++j) {
    double best = 0.0;
    for (std::size_t y = 0; y < prefixes / q; ++y) {
      for (std::size_t w = 0; w < q; ++w) {
        const std::size_t pw = y * q + w;
        if (mass[pw] <= 0.0) continue;
        const std::span<const double> a(laws.data() + pw * width, law_len);
        for (std::size_t w2 = w + 1; w2 < q; ++w2) {
          const std::size_t pw2 = y * q + w2;
          if (mass[pw2] <= 0.0) continue;
          const std::span<const double> b(laws.data() + pw2 * width, law_len);
          best = std::max(best, scaled_tv(a, mass[pw], b, mass[pw2]));
        }
      }
    }
    row.push_back(std::min(best, 1.0));
    if (j < last_j) {
      for (std::size_t p = 0; p < prefixes; ++p) {
        fold_leading(std::span<double>(laws.data() + p * width, law_len), q, n - j + 1, 1);
      }
      law_len /= q;
    }
  }
  return row;
}

}  // namespace

double eta(const FiniteMeasure& mu, std::size_t i, std::size_t j, std::span<const Symbol> y, Symbol w,
           Symbol w_prime) {
  check_pair(mu, i, j);
  if (y.size() != i - 1) throw InvalidArgument("eta: y must have length i - 1");
  auto suffix_law = [&](Symbol last) {
    Sequence prefix(y.begin(), y.end());
    prefix.push_back(last);
    if (prefix_prob(mu, prefix) <= 0.0) throw ZeroProbabilityPrefix("eta: zero-probability prefix");
    const FiniteMeasure cond = conditional(mu, prefix);
    return marginal(cond, j - i, mu.n() - i);
  };
  return tv_distance(suffix_law(w), suffix_law(w_prime));
}

double eta_bar(const FiniteMeasure& mu, std::size_t i, std::size_t j) {
  check_pair(mu, i, j);
  return mixing_row(mu, i, j).back();
}

MixingMatrix mixing_matrix(const FiniteMeasure& mu) {
  const std::size_t n = mu.n();
  MixingMatrix out(n);
  for (std::size_t i = 1; i < n; ++i) {
    const auto row = mixing_row(mu, i, n);
    for (std::size_t j = i + 1; j <= n; ++j) out(i, j) = row[j - i - 1];
  }
  return out;
}

bool check_monotonicity(const FiniteMeasure& mu) {
  return validate_target(mixing_matrix(mu), 1e-12).empty();
}

double phi(const FiniteMeasure& mu, std::size_t gap) {
  const std::size_t n = mu.n();
  const std::size_t q = mu.q();
  if (gap < 1 || gap >= n) throw InvalidArgument("phi: gap must lie in [1, n - 1]");
  const auto probs = mu.probs();
  double best = 0.0;
  for (std::size_t i = 1; i + gap <= n; ++i) {
    const std::size_t prefixes = mu.space().block(i);
    const std::size_t width = mu.space().block(n - i);
    const std::size_t law_len = mu.space().block(n - i - gap + 1);

    std::vector<double> laws(probs.begin(), probs.end());
    std::vector<double> mass(prefixes);
    std::vector<double> unconditional(law_len, 0.0);
    for (std::size_t p = 0; p < prefixes; ++p) {
      std::span<double> block(laws.data() + p * width, width);
      mass[p] = std::accumulate(block.begin(), block.end(), 0.0);
      fold_leading(block, q, n - i, gap - 1);
      for (std::size_t s = 0; s < law_len; ++s) unconditional[s] += block[s];
    }
    for (std::size_t p = 0; p < prefixes; ++p) {
      if (mass[p] <= 0.0) continue;
      best = std::max(best, scaled_tv({laws.data() + p * width, law_len}, mass[p], unconditional, 1.0));
    }
  }
  return std::min(best, 1.0);
}

std::vector<double> phi_vector(const FiniteMeasure& mu) {
  std::vector<double> out;
  for (std::size_t g = 1; g < mu.n(); ++g) out.push_back(phi(mu, g));
  return out;
}

bool check_samson_inequality(const FiniteMeasure& mu) {
  const auto h = mixing_matrix(mu);
  const auto ph = phi_vector(mu);
  for (std::size_t i = 1; i <= h.n(); ++i) {
    for (std::size_t j = i + 1; j <= h.n(); ++j) {
      if (h(i, j) > 2.0 * ph[j - i - 1] + 1e-9) return false;
    }
  }
  return true;
}

std::vector<ConjectureRow> conjecture_scan(std::span<const FiniteMeasure> mus) {
  std::vector<ConjectureRow> rows;
  for (std::size_t id = 0; id < mus.size(); ++id) {
    const FiniteMeasure& mu = mus[id];
    const auto ph = phi_vector(mu);
    const double lhs = 0.5 * std::accumulate(ph.begin(), ph.end(), 0.0);
    const auto h = mixing_matrix(mu);
    double widest = 0.0;
    for (std::size_t i = 1; i < h.n(); ++i) {
      double sum = 0.0;
      for (std::size_t j = i + 1; j <= h.n(); ++j) sum += h(i, j);
      widest = std::max(widest, sum);
    }
    const double rhs = 1.0 + widest;
    rows.push_back({id, mu.n(), mu.q(), lhs, rhs, lhs <= rhs});
  }
  return rows;
}

}  // namespace etamix

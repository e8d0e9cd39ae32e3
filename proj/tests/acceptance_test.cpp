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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "etamix/concentration.hpp"
#include "etamix/construction.hpp"
#include "etamix/mixing.hpp"
#include "etamix/process_rate.hpp"
#include "etamix/products.hpp"
#include "oracle.hpp"

namespace {

using namespace etamix;
using ::etamix::testing::random_measure;
using ::etamix::testing::random_valid_target;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double upper_diff(const MixingMatrix& a, const MixingMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 1; i <= a.n(); ++i) {
    for (std::size_t j = i + 1; j <= a.n(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  }
  return worst;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Shared batch for criteria 3 and 7.
const std::vector<FiniteMeasure>& measure_batch() {
  static const std::vector<FiniteMeasure> batch = [] {
    std::mt19937_64 rng(2024);
    std::vector<FiniteMeasure> out;
    for (int m = 0; m < 500; ++m) {
      const std::size_t q = 2 + m % 2;
      const std::size_t n = 3 + (m / 2) % 3;
      out.push_back(random_measure(rng, q, n));
    }
    return out;
  }();
  return batch;
}

Outcome criterion1() {
  std::mt19937_64 rng(101);
  double worst_factored = 0.0;
  double worst_materialized = 0.0;
  const auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 25; ++trial) {
    const auto h = random_valid_target(rng, 4);
    const auto built = construct_from_target(h);
    worst_factored = std::max(worst_factored, upper_diff(factored_mixing_matrix(built.measure).value(), h));
    worst_materialized = std::max(worst_materialized, upper_diff(mixing_matrix(materialize(built.measure)), h));
  }
  const double fast = seconds_since(start);

  const auto slow_start = std::chrono::steady_clock::now();
  const auto h5 = random_valid_target(rng, 5);
  const auto built5 = construct_from_target(h5);
  const double slow_factored = upper_diff(factored_mixing_matrix(built5.measure).value(), h5);
  const double slow_materialized = upper_diff(mixing_matrix(materialize(built5.measure)), h5);
  const double slow = seconds_since(slow_start);

  const bool pass = worst_factored <= 1e-9 && worst_materialized <= 1e-9 && fast <= 5.0 &&
                    slow_factored <= 1e-9 && slow_materialized <= 1e-9 && slow <= 120.0;
  return {pass, fmt("n=4 x25: factored %.3g, materialized %.3g, ", worst_factored, worst_materialized) +
                    fmt("%.2fs; ", fast) +
                    fmt("n=5: factored %.3g, materialized %.3g, %.2fs", slow_factored, slow_materialized, slow)};
}

Outcome criterion2() {
  const std::vector<double> base{0.8, 0.5, 0.2};
  const std::size_t n = 5;
  double row_dev = 0.0;
  double off_row = 0.0;
  double marginal_dev = 0.0;
  bool preserved = true;
  for (std::size_t k = 1; k <= 3; ++k) {
    // Row k has n - k entries; the shorter rows take a prefix of base and
    // the longer one repeats its last value.
    std::vector<double> values;
    for (std::size_t x = 0; x < n - k; ++x) values.push_back(base[std::min(x, base.size() - 1)]);
    const ValidRow row(n, k, values);
    const auto built = pure_row_measure(row);
    const auto h = mixing_matrix(built.measure);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        if (i == k) {
          row_dev = std::max(row_dev, std::abs(h(i, j) - row.at(j)));
        } else {
          off_row = std::max(off_row, h(i, j));
        }
      }
      marginal_dev = std::max(marginal_dev, std::abs(marginal(built.measure, i, i)[0] - 0.5));
    }
    FiniteMeasure current = uniform(SeqSpace(2, n));
    for (const auto& step : built.trace.steps) {
      const FiniteMeasure next = reweight(current, k, step.t, step.v_star);
      if (step.t < n) preserved = preserved && check_conditional_preservation(current, next, k, step.t + 1, 1e-10);
      current = next;
    }
  }
  const auto start = uniform(SeqSpace(2, n));
  const double f0 = row_objective(start, 1, n, 0.0);
  const double f1 = row_objective(start, 1, n, 1.0);
  const double fhalf = row_objective(start, 1, n, 0.5);
  const double endpoint_dev = std::max({std::abs(f0 - 1.0), std::abs(f1 - 1.0), std::abs(fhalf)});

  const bool pass =
      row_dev <= 1e-9 && off_row <= 1e-9 && marginal_dev <= 1e-10 && preserved && endpoint_dev <= 1e-12;
  return {pass, fmt("row dev %.3g, off-row %.3g, marginal dev %.3g, ", row_dev, off_row, marginal_dev) +
                    std::string("preservation ") + (preserved ? "ok" : "broken") +
                    fmt(", endpoint dev %.3g", endpoint_dev)};
}

Outcome criterion3() {
  int violations = 0;
  for (const auto& mu : measure_batch()) {
    const auto h = mixing_matrix(mu);
    for (std::size_t i = 1; i <= h.n(); ++i) {
      for (std::size_t j = i + 1; j < h.n(); ++j) {
        if (h(i, j + 1) > h(i, j) + 1e-12) ++violations;
      }
    }
  }
  return {violations == 0, fmt("%.0f violations over 500 measures", violations)};
}

Outcome criterion4() {
  std::mt19937_64 rng(303);
  double worst_outside = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto pm = parallel_product(random_measure(rng, 2, 3), random_measure(rng, 2, 3));
    const auto bounds = factored_mixing_matrix(pm);
    const auto h = mixing_matrix(materialize(pm));
    for (std::size_t i = 1; i <= 3; ++i) {
      for (std::size_t j = i + 1; j <= 3; ++j) {
        worst_outside = std::max({worst_outside, bounds.lower(i, j) - h(i, j), h(i, j) - bounds.upper(i, j)});
      }
    }
  }
  double worst_equal = 0.0;
  bool all_exact = true;
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 4;
    const std::size_t k1 = 1 + trial % 3;
    const std::size_t k2 = 1 + (trial + 1 + trial / 3 % 2) % 3;
    const auto target = random_valid_target(rng, n);
    auto row_of = [&](std::size_t k) {
      std::vector<double> v;
      for (std::size_t j = k + 1; j <= n; ++j) v.push_back(target(k, j));
      return ValidRow(n, k, v);
    };
    const auto pm = parallel_product(pure_row_measure(row_of(k1)).measure, pure_row_measure(row_of(k2)).measure);
    const auto bounds = factored_mixing_matrix(pm);
    all_exact = all_exact && bounds.exact;
    const auto h = mixing_matrix(materialize(pm));
    worst_equal = std::max({worst_equal, upper_diff(h, bounds.lower), upper_diff(h, bounds.upper)});
  }
  const bool pass = worst_outside <= 1e-9 && worst_equal <= 1e-9 && all_exact;
  return {pass, fmt("max excursion outside bounds %.3g; disjoint pairs max |eta - bound| %.3g", worst_outside,
                    worst_equal)};
}

Outcome criterion5() {
  std::mt19937_64 rng(505);
  double worst_cross = 0.0;
  double worst_prefix = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 2 + trial % 2;
    const std::size_t extra = 1 + trial / 2 % 2;
    const auto mu = random_measure(rng, 2, m);
    const auto nu = random_measure(rng, 2, extra);
    const auto h = mixing_matrix(series_product(mu, nu));
    const auto hm = mixing_matrix(mu);
    for (std::size_t i = 1; i <= m + extra; ++i) {
      for (std::size_t j = i + 1; j <= m + extra; ++j) {
        if (i <= m && j > m) worst_cross = std::max(worst_cross, h(i, j));
        if (j <= m) worst_prefix = std::max(worst_prefix, std::abs(h(i, j) - hm(i, j)));
      }
    }
  }
  return {worst_cross <= 1e-12 && worst_prefix <= 1e-12,
          fmt("cross-block max %.3g, within-block max diff %.3g", worst_cross, worst_prefix)};
}

Outcome criterion6() {
  const auto start = std::chrono::steady_clock::now();
  const auto p = build_process(RateFunction::builtin("sqrt", 64), default_eps(5), 5, 64);
  bool ratios_ok = true;
  std::string ratios;
  for (const auto& row : check_checkpoints(p)) {
    ratios_ok = ratios_ok && row.ratio >= 1.0 - row.eps_k && row.ratio <= 1.0 + 1e-9;
    ratios += fmt("%.0f:%.4g ", static_cast<double>(row.n_k), row.ratio);
  }
  bool rate_ok = true;
  double previous = 0.0;
  for (long n = 1; n <= 64; ++n) {
    const double r = rate_R(p, n);
    rate_ok = rate_ok && r >= previous && r >= 1.0 && r <= static_cast<double>(n);
    previous = r;
  }
  const double elapsed = seconds_since(start);
  return {ratios_ok && rate_ok && elapsed <= 30.0,
          "n_k:ratio " + ratios + (rate_ok ? "R ok" : "R broken") + fmt(", %.2fs", elapsed)};
}

Outcome criterion7() {
  int violations = 0;
  for (const auto& mu : measure_batch()) {
    const auto h = mixing_matrix(mu);
    const auto phis = phi_vector(mu);
    for (std::size_t i = 1; i <= h.n(); ++i) {
      for (std::size_t j = i + 1; j <= h.n(); ++j) {
        if (h(i, j) > 2.0 * phis[j - i - 1] + 1e-9) ++violations;
      }
    }
  }
  int conjecture_misses = 0;
  for (const auto& row : conjecture_scan(measure_batch())) conjecture_misses += row.satisfied ? 0 : 1;
  return {violations == 0, fmt("%.0f violations; conjecture scan (informational): %.0f of 500 unsatisfied",
                               violations, conjecture_misses)};
}

Outcome criterion8() {
  const double bound = kontram_bound(Matrix::identity(4), 1.0);
  const double bound_err = std::abs(bound - 2.0 * std::exp(-0.5));
  // M^T M = [[1, 1], [1, 2]] has characteristic polynomial x^2 - 3x + 1.
  const double largest_root = (3.0 + std::sqrt(5.0)) / 2.0;
  const double norm_err = std::abs(op_norm_2(Matrix(2, 2, {1, 1, 0, 1})) - std::sqrt(largest_root));
  return {bound_err <= 1e-12 && norm_err <= 1e-9, fmt("kontram err %.3g, spectral norm err %.3g", bound_err, norm_err)};
}

Outcome criterion9() {
  const ValidRow row(4, 1, {0.8, 0.5, 0.2});
  const auto forward = pure_row_measure(row, {}, StepOrder::kForward);
  const auto h = mixing_matrix(forward.measure);
  double worst = 0.0;
  for (std::size_t j = 2; j <= 4; ++j) worst = std::max(worst, std::abs(h(1, j) - row.at(j)));
  // Informational only: a row where later columns do disturb earlier ones.
  const ValidRow other(4, 1, {0.6, 0.5, 0.5});
  const auto h_other = mixing_matrix(pure_row_measure(other, {}, StepOrder::kForward).measure);
  double worst_other = 0.0;
  for (std::size_t j = 2; j <= 4; ++j) worst_other = std::max(worst_other, std::abs(h_other(1, j) - other.at(j)));
  return {worst > 1e-3, fmt("forward-order max cell error %.4g on (0.8, 0.5, 0.2); %.4g on (0.6, 0.5, 0.5)", worst,
                            worst_other)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"target reproduction (factored and materialized)", criterion1},
      {"pure-row suite", criterion2},
      {"row monotonicity", criterion3},
      {"parallel-product sandwich", criterion4},
      {"series-product block properties", criterion5},
      {"rate truncation checkpoints", criterion6},
      {"phi/eta inequality", criterion7},
      {"concentration arithmetic", criterion8},
      {"backward-order witness", criterion9},
  };
  int failures = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = criteria[c].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %zu: %s -- %s (%.2fs)\n", outcome.pass ? "PASS" : "FAIL", c + 1, criteria[c].first,
                outcome.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

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

#include "etamix/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "etamix/error.hpp"

namespace etamix {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw InvalidArgument("matrix data has the wrong size");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CouplingMatrices coupling_matrices(const MixingMatrix& h) {
  std::vector<std::string> bad;
  for (const auto& v : validate_target(h)) {
    if (v.kind != Violation::Kind::kIncreasingRow) bad.push_back(v.describe());
  }
  if (!bad.empty()) throw InvalidTarget("mixing matrix violates (P1)-(P2)", std::move(bad));

  const std::size_t n = h.n();
  CouplingMatrices out{Matrix::identity(n), Matrix::identity(n)};
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      out.gamma(i - 1, j - 1) = std::sqrt(h(i, j));
      out.delta(i - 1, j - 1) = h(i, j);
    }
  }
  return out;
}

namespace {

void require_nonnegative(const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) < 0.0) throw InvalidArgument("operator norm requires a nonnegative matrix");
    }
  }
}

}  // namespace

double op_norm_inf(const Matrix& m) {
  require_nonnegative(m);
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) sum += m(r, c);
    best = std::max(best, sum);
  }
  return best;
}

double op_norm_1(const Matrix& m) {
  require_nonnegative(m);
  double best = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) sum += m(r, c);
    best = std::max(best, sum);
  }
  return best;
}

double op_norm_2(const Matrix& m) {
  constexpr int kMaxIterations = 10000;
  constexpr double kRelativeTolerance = 1e-10;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0.0;

  std::vector<double> x(cols, 1.0 / std::sqrt(static_cast<double>(cols)));
  std::vector<double> mx(rows);
  std::vector<double> next(cols);
  double lambda = 0.0;
  for (int it = 0; it < kMaxIterations; ++it) {
    for (std::size_t r = 0; r < rows; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < cols; ++c) acc += m(r, c) * x[c];
      mx[r] = acc;
    }
    for (std::size_t c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (std::size_t r = 0; r < rows; ++r) acc += m(r, c) * mx[r];
      next[c] = acc;
    }
    // Rayleigh quotient x^T M^T M x for unit x.
    double rayleigh = 0.0;
    for (double v : mx) rayleigh += v * v;
    double norm = 0.0;
    for (double v : next) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (std::size_t c = 0; c < cols; ++c) x[c] = next[c] / norm;
    if (it > 0 && std::abs(rayleigh - lambda) <= kRelativeTolerance * rayleigh) return std::sqrt(rayleigh);
    lambda = rayleigh;
  }
  throw ConvergenceError("power iteration did not converge in " + std::to_string(kMaxIterations) + " iterations");
}

double tail_bound(double norm, double t) {
  if (t < 0.0) throw InvalidArgument("deviation t must be nonnegative");
  if (norm == 0.0) return t == 0.0 ? 2.0 : 0.0;
  return 2.0 * std::exp(-(t * t) / (2.0 * norm * norm));
}

double samson_bound(const Matrix& gamma, double t) { return tail_bound(op_norm_2(gamma), t); }

double kontram_bound(const Matrix& delta, double t, NormChoice norm) {
  return tail_bound(norm == NormChoice::kInf ? op_norm_inf(delta) : op_norm_2(delta), t);
}

}  // namespace etamix

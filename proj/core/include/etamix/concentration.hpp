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

#include "etamix/mixing.hpp"

namespace etamix {

/// Small dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  /// 0-based access.
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Unit-diagonal upper-triangular matrices built from a mixing matrix:
/// gamma holds sqrt(eta_bar) above the diagonal, delta holds eta_bar.
struct CouplingMatrices {
  Matrix gamma;
  Matrix delta;
};

/// Throws InvalidTarget if `h` breaks (P1) or (P2).
CouplingMatrices coupling_matrices(const MixingMatrix& h);

/// Maximal row sum. Throws InvalidArgument on a negative entry.
double op_norm_inf(const Matrix& m);

/// Maximal column sum. Throws InvalidArgument on a negative entry.
double op_norm_1(const Matrix& m);

/// Largest singular value by power iteration on M^T M from the normalized
/// all-ones vector; stops at relative change <= 1e-10. Throws
/// ConvergenceError after 10000 iterations.
double op_norm_2(const Matrix& m);

/// 2 exp(-t^2 / (2 |Gamma|_2^2)).
double samson_bound(const Matrix& gamma, double t);

enum class NormChoice { kInf, kTwo };

/// 2 exp(-t^2 / (2 |Delta|^2)) with the selected operator norm.
double kontram_bound(const Matrix& delta, double t, NormChoice norm = NormChoice::kInf);

/// Tail bound expressed through a precomputed norm.
double tail_bound(double norm, double t);

}  // namespace etamix

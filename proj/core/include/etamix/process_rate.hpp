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

// Finite truncations of processes whose eta-mixing rate R(n) = |Delta_n|_inf
// tracks a prescribed rate function along a sequence of checkpoints.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "etamix/construction.hpp"
#include "etamix/measure.hpp"
#include "etamix/mixing.hpp"

namespace etamix {

/// Integer rate function r evaluated on 1..horizon. Builtin rates are also
/// defined past the horizon, which lets find_nk report exact requirements.
class RateFunction {
 public:
  static RateFunction from_table(std::vector<long> values);
  /// One of "one" (r = 1), "linear" (r = n), "sqrt" (ceil sqrt n),
  /// "log" (max(1, ceil log2 n)).
  static RateFunction builtin(const std::string& name, long horizon);

  long horizon() const { return horizon_; }
  const std::string& name() const { return name_; }
  bool defined_beyond_horizon() const { return unbounded_; }
  /// Throws InvalidArgument for n < 1 or, for tables, n > horizon.
  long operator()(long n) const;

 private:
  RateFunction(std::string name, long horizon, bool unbounded, std::function<long(long)> fn)
      : name_(std::move(name)), horizon_(horizon), unbounded_(unbounded), fn_(std::move(fn)) {}

  std::string name_;
  long horizon_;
  bool unbounded_;
  std::function<long(long)> fn_;
};

/// Human-readable problems: decreasing steps or values outside [1, n].
std::vector<std::string> validate_rate(const RateFunction& r);

struct NkChoice {
  long n;
  double h;
  double ratio;  // h (n - k) / r(n)
};

/// Smallest n in (k, horizon] with h = min(1, r(n)/(n-k)) and
/// 1 - eps <= h (n - k) / r(n) <= 1. Throws HorizonTooSmall otherwise.
NkChoice find_nk(const RateFunction& r, long k, double eps);
/// As above, scanning no further than `limit` (when positive).
NkChoice find_nk(const RateFunction& r, long k, double eps, long limit);

struct Checkpoint {
  long k;
  double eps;
  long n_k;
  double h_k;
};

/// Component k: the pure k-th row measure with constant row h_k on
/// {0,1}^{n_k}, padded on the right by independent fair bits. Mixing matrices
/// of its length-m prefixes are cached for m = 1..n_k.
struct ProcessComponent {
  FiniteMeasure base;
  ConstructionTrace trace;
  std::vector<MixingMatrix> prefix_matrices;  // index m - 1
};

struct TruncatedProcess {
  RateFunction rate;
  long k_max;
  long n_max;
  std::vector<Checkpoint> checkpoints;
  std::vector<ProcessComponent> components;
};

/// Default tolerance sequence eps_k = 1 / (k + 1), k = 1..k_max.
std::vector<double> default_eps(long k_max);

ProcessComponent build_component(long k, long n_k, double h_k, const SolverOptions& options = {});

/// Throws InvalidArgument for k_max < 1, an invalid rate or an eps sequence
/// that is not strictly decreasing in (0, 1); HorizonTooSmall when some
/// checkpoint does not fit in n_max.
TruncatedProcess build_process(const RateFunction& r, std::vector<double> eps, long k_max, long n_max,
                               const SolverOptions& options = {});

/// Mixing matrix of the length-n prefix of component `index` (0-based).
MixingMatrix component_prefix_matrix(const TruncatedProcess& p, std::size_t index, long n);

/// Dense length-n prefix of one padded component; small n only.
FiniteMeasure materialize_component_prefix(const TruncatedProcess& p, std::size_t index, long n);

/// Exact mixing matrix of the length-n prefix of the whole process (the
/// component rows are disjoint).
MixingMatrix process_prefix_matrix(const TruncatedProcess& p, long n);

/// R(n) = |Delta_n|_inf for the whole process, 1 <= n <= n_max.
double rate_R(const TruncatedProcess& p, long n);

struct CheckpointReport {
  long k;
  double eps_k;
  long n_k;
  double h_k;
  /// Off-diagonal row sum of Delta_{n_k} of component k, over r(n_k).
  double ratio;
  /// Same with the unit diagonal included.
  double ratio_with_diagonal;
  /// (R(n_k) - 1) / r(n_k) for the whole process.
  double process_ratio;
  bool pass;
};

/// pass iff 1 - eps_k - tol <= ratio <= 1 + tol.
std::vector<CheckpointReport> check_checkpoints(const TruncatedProcess& p, double tol = 1e-9);

}  // namespace etamix

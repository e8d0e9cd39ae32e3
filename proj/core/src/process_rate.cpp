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

#include "etamix/process_rate.hpp"

#include <algorithm>
#include <cmath>

#include "etamix/concentration.hpp"
#include "etamix/error.hpp"
#include "etamix/products.hpp"

namespace etamix {

namespace {

long ceil_sqrt(long n) {
  auto s = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (s * s > n) --s;
  while (s * s < n) ++s;
  return s;
}

long ceil_log2(long n) {
  long bits = 0;
  for (long v = n - 1; v > 0; v >>= 1) ++bits;
  return bits;
}

constexpr double kRatioSlack = 1e-12;

bool admissible(double ratio, double eps) {
  return ratio >= 1.0 - eps - kRatioSlack && ratio <= 1.0 + kRatioSlack;
}

NkChoice evaluate_nk(const RateFunction& r, long k, long n) {
  const double rn = static_cast<double>(r(n));
  const double span = static_cast<double>(n - k);
  const double h = std::min(1.0, rn / span);
  return {n, h, h * span / rn};
}

}  // namespace

RateFunction RateFunction::from_table(std::vector<long> values) {
  if (values.empty()) throw InvalidArgument("rate table is empty");
  const long horizon = static_cast<long>(values.size());
  return RateFunction("table", horizon, false, [table = std::move(values)](long n) { return table[n - 1]; });
}

RateFunction RateFunction::builtin(const std::string& name, long horizon) {
  if (horizon < 1) throw InvalidArgument("rate horizon must be at least 1");
  std::function<long(long)> fn;
  if (name == "one") {
    fn = [](long) { return 1L; };
  } else if (name == "linear") {
    fn = [](long n) { return n; };
  } else if (name == "sqrt") {
    fn = ceil_sqrt;
  } else if (name == "log") {
    fn = [](long n) { return std::max(1L, ceil_log2(n)); };
  } else {
    throw InvalidArgument("unknown builtin rate '" + name + "'");
  }
  return RateFunction(name, horizon, true, std::move(fn));
}

long RateFunction::operator()(long n) const {
  if (n < 1) throw InvalidArgument("rate functions are defined for n >= 1");
  if (!unbounded_ && n > horizon_) throw InvalidArgument("rate table does not cover n = " + std::to_string(n));
  return fn_(n);
}

std::vector<std::string> validate_rate(const RateFunction& r) {
  std::vector<std::string> out;
  long previous = 0;
  for (long n = 1; n <= r.horizon(); ++n) {
    const long v = r(n);
    if (v < 1 || v > n) {
      out.push_back("r(" + std::to_string(n) + ") = " + std::to_string(v) + " lies outside [1, " + std::to_string(n) + "]");
    }
    if (n > 1 && v < previous) {
      out.push_back("r decreases from " + std::to_string(previous) + " to " + std::to_string(v) + " at n = " + std::to_string(n));
    }
    previous = v;
  }
  return out;
}

NkChoice find_nk(const RateFunction& r, long k, double eps, long limit) {
  if (k < 1) throw InvalidArgument("checkpoint index k must be at least 1");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  const long last = limit > 0 ? std::min(limit, r.horizon()) : r.horizon();
  for (long n = k + 1; n <= last; ++n) {
    const auto choice = evaluate_nk(r, k, n);
    if (admissible(choice.ratio, eps)) return choice;
  }
  // Any n >= k / eps works for a valid rate, since r(n) <= n.
  long required = std::max(k + 1, static_cast<long>(std::ceil(static_cast<double>(k) / eps - 1e-12)));
  if (r.defined_beyond_horizon()) {
    for (long n = last + 1; n <= required; ++n) {
      if (admissible(evaluate_nk(r, k, n).ratio, eps)) {
        required = n;
        break;
      }
    }
  }
  throw HorizonTooSmall("no checkpoint for k = " + std::to_string(k) + " within horizon " + std::to_string(last) +
                            "; n_max must be at least " + std::to_string(required),
                        required);
}

NkChoice find_nk(const RateFunction& r, long k, double eps) { return find_nk(r, k, eps, -1); }

std::vector<double> default_eps(long k_max) {
  std::vector<double> eps;
  for (long k = 1; k <= k_max; ++k) eps.push_back(1.0 / static_cast<double>(k + 1));
  return eps;
}

ProcessComponent build_component(long k, long n_k, double h_k, const SolverOptions& options) {
  const auto size = static_cast<std::size_t>(n_k);
  const auto row = static_cast<std::size_t>(k);
  auto built = pure_row_measure(ValidRow(size, row, std::vector<double>(size - row, h_k)), options);
  ProcessComponent out{std::move(built.measure), std::move(built.trace), {}};
  for (std::size_t m = 1; m < size; ++m) out.prefix_matrices.push_back(mixing_matrix(marginal(out.base, 1, m)));
  out.prefix_matrices.push_back(mixing_matrix(out.base));
  return out;
}

TruncatedProcess build_process(const RateFunction& r, std::vector<double> eps, long k_max, long n_max,
                               const SolverOptions& options) {
  if (k_max < 1) throw InvalidArgument("a process needs at least one component (k_max >= 1)");
  if (n_max < 2) throw InvalidArgument("n_max must be at least 2");
  if (r.horizon() < n_max && !r.defined_beyond_horizon()) {
    throw InvalidArgument("rate table covers " + std::to_string(r.horizon()) + " values, n_max is " + std::to_string(n_max));
  }
  const RateFunction rate = r.defined_beyond_horizon() ? RateFunction::builtin(r.name(), n_max) : r;
  const auto problems = validate_rate(rate);
  if (!problems.empty()) throw InvalidArgument("invalid rate function: " + problems.front());

  if (eps.empty()) eps = default_eps(k_max);
  if (static_cast<long>(eps.size()) < k_max) throw InvalidArgument("eps sequence is shorter than k_max");
  eps.resize(static_cast<std::size_t>(k_max));
  for (std::size_t x = 0; x < eps.size(); ++x) {
    if (!(eps[x] > 0.0 && eps[x] < 1.0)) throw InvalidArgument("eps values must lie in (0, 1)");
    if (x > 0 && !(eps[x] < eps[x - 1])) throw InvalidArgument("eps must be strictly decreasing");
  }

  TruncatedProcess p{rate, k_max, n_max, {}, {}};
  for (long k = 1; k <= k_max; ++k) {
    const auto choice = find_nk(rate, k, eps[static_cast<std::size_t>(k - 1)], n_max);
    p.checkpoints.push_back({k, eps[static_cast<std::size_t>(k - 1)], choice.n, choice.h});
    p.components.push_back(build_component(k, choice.n, choice.h, options));
  }
  return p;
}

MixingMatrix component_prefix_matrix(const TruncatedProcess& p, std::size_t index, long n) {
  if (n < 1 || n > p.n_max) throw InvalidArgument("prefix length outside [1, n_max]");
  const auto& comp = p.components.at(index);
  const auto n_k = static_cast<long>(comp.base.n());
  if (n <= n_k) return comp.prefix_matrices[static_cast<std::size_t>(n - 1)];
  // Independent fair bits appended on the right leave the block untouched
  // and add only zero entries.
  const auto& full = comp.prefix_matrices.back();
  MixingMatrix out(static_cast<std::size_t>(n));
  for (std::size_t i = 1; i <= full.n(); ++i) {
    for (std::size_t j = i + 1; j <= full.n(); ++j) out(i, j) = full(i, j);
  }
  return out;
}

FiniteMeasure materialize_component_prefix(const TruncatedProcess& p, std::size_t index, long n) {
  if (n < 1 || n > p.n_max) throw InvalidArgument("prefix length outside [1, n_max]");
  const auto& base = p.components.at(index).base;
  const auto n_k = static_cast<long>(base.n());
  if (n == n_k) return base;
  if (n < n_k) return marginal(base, 1, static_cast<std::size_t>(n));
  return series_product(base, uniform(SeqSpace(2, static_cast<std::size_t>(n - n_k))));
}

MixingMatrix process_prefix_matrix(const TruncatedProcess& p, long n) {
  std::vector<MixingMatrix> parts;
  for (std::size_t c = 0; c < p.components.size(); ++c) parts.push_back(component_prefix_matrix(p, c, n));
  return combine_component_matrices(parts).value();
}

double rate_R(const TruncatedProcess& p, long n) {
  return op_norm_inf(coupling_matrices(process_prefix_matrix(p, n)).delta);
}

std::vector<CheckpointReport> check_checkpoints(const TruncatedProcess& p, double tol) {
  std::vector<CheckpointReport> out;
  for (std::size_t c = 0; c < p.checkpoints.size(); ++c) {
    const auto& cp = p.checkpoints[c];
    const double r = static_cast<double>(p.rate(cp.n_k));
    const double norm = op_norm_inf(coupling_matrices(component_prefix_matrix(p, c, cp.n_k)).delta);
    const double ratio = (norm - 1.0) / r;
    const double process_ratio = (rate_R(p, cp.n_k) - 1.0) / r;
    const bool pass = ratio >= 1.0 - cp.eps - tol && ratio <= 1.0 + tol;
    out.push_back({cp.k, cp.eps, cp.n_k, cp.h_k, ratio, norm / r, process_ratio, pass});
  }
  return out;
}

}  // namespace etamix

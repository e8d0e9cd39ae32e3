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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <optional>
#include <random>
#include <variant>

#include <CLI11.hpp>

#include "etamix/concentration.hpp"
#include "etamix/construction.hpp"
#include "etamix/error.hpp"
#include "etamix/io.hpp"
#include "etamix/mixing.hpp"
#include "etamix/process_rate.hpp"
#include "etamix/products.hpp"

namespace etamix::cli {

namespace {

struct CommandConfig {
  std::size_t state_cap = kDefaultStateCap;
  double tolerance = 1e-9;
  std::uint64_t seed = 7;
  std::string output;
};

void emit(const CommandConfig& cfg, std::ostream& out, const std::string& content) {
  if (cfg.output.empty()) {
    out << content;
  } else {
    write_file_atomic(cfg.output, content);
  }
}

FiniteMeasure load_dense(const std::string& path, std::size_t cap) {
  auto loaded = any_measure_from_json(read_text_file(path), cap);
  if (auto* mu = std::get_if<FiniteMeasure>(&loaded)) return std::move(*mu);
  return materialize(std::get<ProductMeasure>(loaded), cap);
}

int cmd_mix(const CommandConfig& cfg, const std::string& input, std::ostream& out) {
  const FiniteMeasure mu = load_dense(input, cfg.state_cap);
  emit(cfg, out, matrix_to_json(mixing_matrix(mu)));
  return kOk;
}

int cmd_construct(const CommandConfig& cfg, const std::string& input, const std::string& trace_path,
                  std::ostream& out, std::ostream& err) {
  const MixingMatrix target = matrix_from_json(read_text_file(input));
  const auto built = construct_from_target(target, SolverOptions{cfg.tolerance, 80});
  const auto factored = factored_mixing_matrix(built.measure, cfg.tolerance);
  double deviation = 0.0;
  for (std::size_t i = 1; i <= target.n(); ++i) {
    for (std::size_t j = i + 1; j <= target.n(); ++j) {
      deviation = std::max(deviation, std::abs(factored.value()(i, j) - target(i, j)));
    }
  }
  const std::string product = product_to_json(built.measure);
  if (cfg.output.empty()) {
    out << product;
  } else {
    write_file_atomic(cfg.output, product);
  }
  if (!trace_path.empty()) write_file_atomic(trace_path, traces_to_json(built.traces));
  (cfg.output.empty() ? err : out) << "max |achieved - target| = " << format_real(deviation)
                                          << (factored.exact ? "" : " (rows overlap; bound only)") << "\n";
  return kOk;
}

int cmd_rate(const CommandConfig& cfg, const std::string& input, std::ostream& out) {
  const ProcessSpec spec = process_spec_from_json(read_text_file(input));
  const auto process = build_process(spec.rate, spec.eps, spec.k_max, spec.n_max, SolverOptions{cfg.tolerance, 80});
  const auto report = check_checkpoints(process);
  emit(cfg, out, checkpoint_csv(report));
  const bool all_pass = std::all_of(report.begin(), report.end(), [](const auto& r) { return r.pass; });
  return all_pass ? kOk : kFailure;
}

int cmd_bounds(const CommandConfig& cfg, const std::string& input, double t, std::ostream& out) {
  const MixingMatrix h = matrix_from_json(read_text_file(input));
  emit(cfg, out, bounds_to_json(bounds_report(h, t)));
  return kOk;
}

int cmd_validate(const CommandConfig& cfg, const std::string& input, std::ostream& out) {
  const MixingMatrix h = matrix_from_json(read_text_file(input));
  const auto violations = validate_target(h);
  std::string body = "{\"version\": \"" + version_string() + "\", \"violations\": [";
  for (std::size_t v = 0; v < violations.size(); ++v) {
    body += (v ? ",\n  \"" : "\n  \"") + violations[v].describe() + "\"";
  }
  body += violations.empty() ? "]}\n" : "\n]}\n";
  emit(cfg, out, body);
  return violations.empty() ? kOk : kInvalidTarget;
}

int cmd_product(const CommandConfig& cfg, const std::vector<std::string>& inputs, bool series, std::ostream& out) {
  std::vector<FiniteMeasure> parts;
  for (const auto& path : inputs) parts.push_back(load_dense(path, cfg.state_cap));
  FiniteMeasure result = parts.front();
  if (series) {
    for (std::size_t c = 1; c < parts.size(); ++c) result = series_product(result, parts[c], cfg.state_cap);
  } else {
    result = materialize(ProductMeasure(std::move(parts)), cfg.state_cap);
  }
  emit(cfg, out, measure_to_json(result));
  return kOk;
}

int cmd_scan(const CommandConfig& cfg, std::size_t count, std::size_t q, std::size_t n, std::ostream& out) {
  const SeqSpace space(q, n, cfg.state_cap);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  std::vector<FiniteMeasure> mus;
  for (std::size_t m = 0; m < count; ++m) {
    std::vector<double> w(space.size());
    for (double& x : w) x = weight(rng);
    mus.push_back(from_weights(space, std::move(w)));
  }
  emit(cfg, out, conjecture_csv(conjecture_scan(mus)));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact eta-mixing coefficients and measures with prescribed mixing", "etamix"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);
  app.fallthrough();

  CommandConfig cfg;
  app.add_option("--state-cap", cfg.state_cap, "Largest dense state count to allocate")->check(CLI::PositiveNumber);
  app.add_option("--tolerance", cfg.tolerance, "Root-finding tolerance on achieved coefficients")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for randomized scans");
  app.add_option("-o,--output", cfg.output, "Write the result here instead of stdout");

  std::string input;
  auto* mix = app.add_subcommand("mix", "Mixing matrix of a measure or product-measure file");
  mix->add_option("measure", input, "Measure JSON")->required();

  std::string trace_path;
  auto* construct = app.add_subcommand("construct", "Build a measure realizing a target mixing matrix");
  construct->add_option("target", input, "Target matrix JSON")->required();
  construct->add_option("--trace", trace_path, "Write per-step construction diagnostics here");

  auto* rate = app.add_subcommand("rate", "Build a truncated process for a rate function and check its checkpoints");
  rate->add_option("spec", input, "Process spec JSON")->required();

  double t = 0.0;
  auto* bounds = app.add_subcommand(
      "bounds",
      "Concentration tail bounds from a mixing matrix. Lipschitz hypotheses (l2 for the Gamma bound, "
      "Hamming with constant n^-1/2 for the Delta bounds) are the caller's responsibility");
  bounds->add_option("matrix", input, "Mixing matrix JSON")->required();
  bounds->add_option("-t,--t", t, "Deviation t >= 0")->required()->check(CLI::NonNegativeNumber);

  auto* validate = app.add_subcommand("validate", "Check a target matrix for (P1)-(P3) violations");
  validate->add_option("matrix", input, "Matrix JSON")->required();

  std::vector<std::string> inputs;
  bool series = false;
  auto* product = app.add_subcommand("product", "Materialized parallel (default) or series product of measures");
  product->add_option("measures", inputs, "Measure JSON files")->required();
  product->add_flag("--series", series, "Concatenate instead of pairing coordinatewise");

  std::size_t count = 100;
  std::size_t q = 2;
  std::size_t n = 4;
  auto* scan = app.add_subcommand("scan", "Evaluate the phi/eta row-sum conjecture on random measures");
  scan->add_option("--count", count, "Number of random measures");
  scan->add_option("--q", q, "Alphabet size")->check(CLI::PositiveNumber);
  scan->add_option("--n", n, "Sequence length")->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version_string() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "etamix: " << e.what() << "\n";
    return kParseError;
  }

  try {
    if (*mix) return cmd_mix(cfg, input, out);
    if (*construct) return cmd_construct(cfg, input, trace_path, out, err);
    if (*rate) return cmd_rate(cfg, input, out);
    if (*bounds) return cmd_bounds(cfg, input, t, out);
    if (*validate) return cmd_validate(cfg, input, out);
    if (*product) return cmd_product(cfg, inputs, series, out);
    if (*scan) return cmd_scan(cfg, count, q, n, out);
  } catch (const ParseError& e) {
    err << "etamix: parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const StateCapExceeded& e) {
    err << "etamix: " << e.what() << "\n";
    return kStateCap;
  } catch (const InvalidTarget& e) {
    err << "etamix: " << e.what() << "\n";
    for (const auto& v : e.violations()) err << "  " << v << "\n";
    return kInvalidTarget;
  } catch (const HorizonTooSmall& e) {
    err << "etamix: " << e.what() << "\n";
    err << "required n_max: " << e.required_horizon() << "\n";
    return kHorizonTooSmall;
  } catch (const InvalidArgument& e) {
    err << "etamix: invalid input: " << e.what() << "\n";
    return kParseError;
  } catch (const Error& e) {
    err << "etamix: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "etamix: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace etamix::cli

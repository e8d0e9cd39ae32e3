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

// File formats. Writers emit reals with 17 significant digits and a
// "version" field (JSON) or a leading "# <version>" line (CSV); readers
// ignore both. Readers throw ParseError on malformed input.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "etamix/construction.hpp"
#include "etamix/measure.hpp"
#include "etamix/mixing.hpp"
#include "etamix/process_rate.hpp"
#include "etamix/products.hpp"

namespace etamix {

std::string version_string();

/// printf("%.17g"); non-finite values are rejected.
std::string format_real(double x);

std::string measure_to_json(const FiniteMeasure& mu);
/// {"q", "n", "probs"}; rescales when the mass is off by less than 1e-9.
FiniteMeasure measure_from_json(std::string_view text, std::size_t state_cap = kDefaultStateCap);

std::string matrix_to_json(const MixingMatrix& h);
MixingMatrix matrix_from_json(std::string_view text);

std::string product_to_json(const ProductMeasure& pm);
ProductMeasure product_from_json(std::string_view text, std::size_t state_cap = kDefaultStateCap);

/// A measure file or a product file, told apart by the "components" key.
std::variant<FiniteMeasure, ProductMeasure> any_measure_from_json(std::string_view text,
                                                                   std::size_t state_cap = kDefaultStateCap);

/// {"components": [{"k", "steps": [{t, v_star, iterations, achieved, alpha}]}]}
std::string traces_to_json(const std::vector<ConstructionTrace>& traces);

struct BoundsReport {
  double t;
  double norm_inf;      // |Delta|_inf
  double norm_2;        // |Delta|_2
  double gamma_norm_2;  // |Gamma|_2, used by the Samson bound
  double samson;
  double kontram_inf;
  double kontram_2;
};

BoundsReport bounds_report(const MixingMatrix& h, double t);
std::string bounds_to_json(const BoundsReport& report);

struct ProcessSpec {
  RateFunction rate;
  long k_max;
  long n_max;
  std::vector<double> eps;  // empty = default
};

/// {"rate": {"kind": "table", "values": [...]} | {"kind": "builtin", "name": ...},
///  "k_max": int, "n_max": int, "eps": [...] (optional)}
ProcessSpec process_spec_from_json(std::string_view text);

std::string conjecture_csv(const std::vector<ConjectureRow>& rows);
std::string checkpoint_csv(const std::vector<CheckpointReport>& rows);

std::string read_text_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace etamix

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

#include "etamix/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "etamix/concentration.hpp"
#include "etamix/error.hpp"
#include "etamix/version.hpp"

namespace etamix {

using nlohmann::json;

std::string version_string() { return std::string("etamix ") + kVersion; }

std::string format_real(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot serialize a non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

std::size_t positive_size(const json& j, const char* key) {
  const auto v = field<long long>(j, key);
  if (v < 1) throw ParseError(std::string("field '") + key + "' must be positive");
  return static_cast<std::size_t>(v);
}

std::string join_reals(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t x = 0; x < xs.size(); ++x) {
    if (x) out += ", ";
    out += format_real(xs[x]);
  }
  return out + "]";
}

std::string header_json() { return "\"version\": \"" + version_string() + "\""; }

std::string measure_body(const FiniteMeasure& mu) {
  return "\"q\": " + std::to_string(mu.q()) + ", \"n\": " + std::to_string(mu.n()) +
         ", \"probs\": " + join_reals({mu.probs().begin(), mu.probs().end()});
}

FiniteMeasure measure_from(const json& j, std::size_t state_cap) {
  const std::size_t q = positive_size(j, "q");
  const std::size_t n = positive_size(j, "n");
  auto probs = field<std::vector<double>>(j, "probs");
  const SeqSpace space(q, n, state_cap);
  if (probs.size() != space.size()) {
    throw ParseError("expected " + std::to_string(space.size()) + " probabilities, found " + std::to_string(probs.size()));
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ParseError("negative or non-finite probability");
    total += p;
  }
  if (std::abs(total - 1.0) >= 1e-9) throw ParseError("probabilities sum to " + format_real(total));
  if (std::abs(total - 1.0) <= kMassTolerance) return FiniteMeasure(space, std::move(probs));
  return from_weights(space, std::move(probs));
}

ProductMeasure product_from(const json& j, std::size_t state_cap) {
  const std::size_t n = positive_size(j, "n");
  if (!j.contains("components")) throw ParseError("missing field 'components'");
  const auto& comps = j["components"];
  if (!comps.is_array() || comps.empty()) throw ParseError("'components' must be a nonempty array");
  std::vector<FiniteMeasure> parts;
  for (const auto& c : comps) {
    parts.push_back(measure_from(c, state_cap));
    if (parts.back().n() != n) throw ParseError("component length differs from 'n'");
  }
  return ProductMeasure(std::move(parts));
}

}  // namespace

std::string measure_to_json(const FiniteMeasure& mu) {
  return "{" + header_json() + ", " + measure_body(mu) + "}\n";
}

FiniteMeasure measure_from_json(std::string_view text, std::size_t state_cap) {
  return measure_from(parse(text), state_cap);
}

std::string matrix_to_json(const MixingMatrix& h) {
  std::string out = "{" + header_json() + ", \"n\": " + std::to_string(h.n()) + ", \"entries\": [";
  for (std::size_t i = 1; i <= h.n(); ++i) {
    std::vector<double> row;
    for (std::size_t j = 1; j <= h.n(); ++j) row.push_back(h(i, j));
    out += (i > 1 ? ",\n  " : "\n  ") + join_reals(row);
  }
  return out + "\n]}\n";
}

MixingMatrix matrix_from_json(std::string_view text) {
  const json j = parse(text);
  const std::size_t n = positive_size(j, "n");
  const auto rows = field<std::vector<std::vector<double>>>(j, "entries");
  if (rows.size() != n) throw ParseError("'entries' must have n rows");
  MixingMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw ParseError("row " + std::to_string(i + 1) + " of 'entries' must have n values");
    for (std::size_t c = 0; c < n; ++c) {
      if (!std::isfinite(rows[i][c])) throw ParseError("non-finite matrix entry");
      h(i + 1, c + 1) = rows[i][c];
    }
  }
  return h;
}

std::string product_to_json(const ProductMeasure& pm) {
  std::string out = "{" + header_json() + ", \"n\": " + std::to_string(pm.n()) + ", \"components\": [";
  for (std::size_t c = 0; c < pm.components().size(); ++c) {
    out += (c ? ",\n  {" : "\n  {") + measure_body(pm.components()[c]) + "}";
  }
  return out + "\n]}\n";
}

ProductMeasure product_from_json(std::string_view text, std::size_t state_cap) {
  return product_from(parse(text), state_cap);
}

std::variant<FiniteMeasure, ProductMeasure> any_measure_from_json(std::string_view text, std::size_t state_cap) {
  const json j = parse(text);
  if (j.is_object() && j.contains("components")) return product_from(j, state_cap);
  return measure_from(j, state_cap);
}

std::string traces_to_json(const std::vector<ConstructionTrace>& traces) {
  std::string out = "{" + header_json() + ", \"components\": [";
  for (std::size_t c = 0; c < traces.size(); ++c) {
    out += (c ? ",\n  " : "\n  ") + std::string("{\"k\": ") + std::to_string(traces[c].k) + ", \"steps\": [";
    const auto& steps = traces[c].steps;
    for (std::size_t s = 0; s < steps.size(); ++s) {
      const auto& st = steps[s];
      out += (s ? ",\n    " : "\n    ") + std::string("{\"t\": ") + std::to_string(st.t) +
             ", \"v_star\": " + format_real(st.v_star) + ", \"iterations\": " + std::to_string(st.iterations) +
             ", \"achieved\": " + format_real(st.achieved) + ", \"alpha\": " + format_real(st.alpha) + "}";
    }
    out += "]}";
  }
  return out + "\n]}\n";
}

BoundsReport bounds_report(const MixingMatrix& h, double t) {
  const auto cm = coupling_matrices(h);
  BoundsReport r{};
  r.t = t;
  r.norm_inf = op_norm_inf(cm.delta);
  r.norm_2 = op_norm_2(cm.delta);
  r.gamma_norm_2 = op_norm_2(cm.gamma);
  r.samson = tail_bound(r.gamma_norm_2, t);
  r.kontram_inf = tail_bound(r.norm_inf, t);
  r.kontram_2 = tail_bound(r.norm_2, t);
  return r;
}

std::string bounds_to_json(const BoundsReport& r) {
  return "{" + header_json() + ", \"t\": " + format_real(r.t) + ", \"norm_inf\": " + format_real(r.norm_inf) +
         ", \"norm_2\": " + format_real(r.norm_2) + ", \"gamma_norm_2\": " + format_real(r.gamma_norm_2) +
         ", \"samson\": " + format_real(r.samson) + ", \"kontram_inf\": " + format_real(r.kontram_inf) +
         ", \"kontram_2\": " + format_real(r.kontram_2) + "}\n";
}

ProcessSpec process_spec_from_json(std::string_view text) {
  const json j = parse(text);
  const long k_max = field<long>(j, "k_max");
  const long n_max = field<long>(j, "n_max");
  if (!j.contains("rate") || !j["rate"].is_object()) throw ParseError("missing object 'rate'");
  const json& rate = j["rate"];
  const auto kind = field<std::string>(rate, "kind");
  std::vector<double> eps;
  if (j.contains("eps")) eps = field<std::vector<double>>(j, "eps");
  try {
    if (kind == "table") {
      return {RateFunction::from_table(field<std::vector<long>>(rate, "values")), k_max, n_max, std::move(eps)};
    }
    if (kind == "builtin") {
      return {RateFunction::builtin(field<std::string>(rate, "name"), std::max(n_max, 1L)), k_max, n_max,
              std::move(eps)};
    }
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("rate kind must be 'table' or 'builtin'");
}

std::string conjecture_csv(const std::vector<ConjectureRow>& rows) {
  std::string out = "# " + version_string() + "\nmeasure_id,n,q,lhs,rhs,satisfied\n";
  for (const auto& r : rows) {
    out += std::to_string(r.measure_id) + "," + std::to_string(r.n) + "," + std::to_string(r.q) + "," +
           format_real(r.lhs) + "," + format_real(r.rhs) + "," + (r.satisfied ? "true" : "false") + "\n";
  }
  return out;
}

std::string checkpoint_csv(const std::vector<CheckpointReport>& rows) {
  std::string out = "# " + version_string() + "\nk,eps_k,n_k,h_k,ratio,pass\n";
  for (const auto& r : rows) {
    out += std::to_string(r.k) + "," + format_real(r.eps_k) + "," + std::to_string(r.n_k) + "," +
           format_real(r.h_k) + "," + format_real(r.ratio) + "," + (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace etamix

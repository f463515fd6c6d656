// Copyright 2026 The qkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qkit/fixtures.hpp"

namespace qkit::io {

using nlohmann::json;

namespace {

int line_at(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Line of the first occurrence of "key" as a JSON member name, or 1.
int key_line(const std::string& text, const std::string& key) {
  const std::size_t pos = text.find("\"" + key + "\"");
  return pos == std::string::npos ? 1 : line_at(text, pos);
}

// Line where row `row` of the matrix under `key` opens.
int row_line(const std::string& text, const std::string& key, std::size_t row) {
  std::size_t pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return 1;
  pos = text.find('[', pos);
  int depth = 0;
  std::size_t seen = 0;
  bool in_string = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (in_string) {
      if (c == '\\') ++pos;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '[') {
      if (++depth == 2 && seen++ == row) return line_at(text, pos);
    } else if (c == ']') {
      if (--depth == 0) break;
    }
  }
  return key_line(text, key);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg,
                       ErrorKind kind = ErrorKind::Parse) {
  throw Error(kind, source + ":" + std::to_string(line) + ": " + msg);
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(source, line_at(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
}

Complex entry(const json& v, bool& ok) {
  ok = true;
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  ok = false;
  return {};
}

struct Located {
  const std::string& text;
  const std::string& source;
};

// Square matrix of [re, im] pairs; rejects ragged or non-numeric rows.
ComplexMatrix parse_matrix(const json& m, const std::string& key, Located at,
                           std::optional<int> expected = std::nullopt) {
  if (!m.is_array() || m.empty()) {
    fail(at.source, key_line(at.text, key), "'" + key + "' must be a non-empty array of rows");
  }
  const std::size_t n = m.size();
  if (expected && static_cast<int>(n) != *expected) {
    fail(at.source, key_line(at.text, key),
         "'" + key + "' has " + std::to_string(n) + " rows, expected " +
             std::to_string(*expected), ErrorKind::DimensionMismatch);
  }
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const json& row = m[r];
    if (!row.is_array() || row.size() != n) {
      fail(at.source, row_line(at.text, key, r),
           "'" + key + "' row " + std::to_string(r) + " has " +
               std::to_string(row.is_array() ? row.size() : 0) + " entries, expected " +
               std::to_string(n) + " (ragged rows are not allowed)");
    }
    for (std::size_t c = 0; c < n; ++c) {
      bool ok = false;
      out(r, c) = entry(row[c], ok);
      if (!ok) {
        fail(at.source, row_line(at.text, key, r),
             "'" + key + "' row " + std::to_string(r) + " entry " + std::to_string(c) +
                 " must be a number or an [re, im] pair");
      }
    }
  }
  return out;
}

void check_version(const json& root, Located at) {
  if (root.contains("format_version") &&
      !(root["format_version"].is_number_integer() && root["format_version"] == kFormatVersion)) {
    fail(at.source, key_line(at.text, "format_version"),
         "unsupported format_version, expected " + std::to_string(kFormatVersion));
  }
}

StateFile state_from_json(const json& root, Located at) {
  if (!root.is_object()) fail(at.source, 1, "state file must be a JSON object");
  check_version(root, at);
  if (!root.contains("dims") || !root["dims"].is_array() || root["dims"].size() != 2 ||
      !root["dims"][0].is_number_integer() || !root["dims"][1].is_number_integer()) {
    fail(at.source, key_line(at.text, "dims"), "'dims' must be [d_A, d_B]");
  }
  const Dims dims{root["dims"][0].get<int>(), root["dims"][1].get<int>()};
  if (dims.a < 1 || dims.b < 1 || dims.total() > kMaxTotalDim) {
    fail(at.source, key_line(at.text, "dims"),
         "'dims' must be positive with d_A * d_B <= " + std::to_string(kMaxTotalDim),
         ErrorKind::DimensionMismatch);
  }
  if (!root.contains("matrix")) fail(at.source, 1, "missing 'matrix'");
  const ComplexMatrix m = parse_matrix(root["matrix"], "matrix", at, dims.total());
  std::string label;
  if (root.contains("label")) {
    if (!root["label"].is_string()) fail(at.source, key_line(at.text, "label"), "'label' must be a string");
    label = root["label"].get<std::string>();
  }
  try {
    return StateFile{label, DensityMatrix(dims, m)};
  } catch (const Error& e) {
    fail(at.source, key_line(at.text, "matrix"), e.what(), e.kind());
  }
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

StateFile parse_state(const std::string& text, const std::string& source) {
  return state_from_json(parse_json(text, source), Located{text, source});
}

StateFile read_state(const std::filesystem::path& path) {
  return parse_state(read_text(path), path.string());
}

std::string format_state(const DensityMatrix& rho, const std::string& label) {
  std::ostringstream out;
  out << "{\n  \"format_version\": " << kFormatVersion << ",\n";
  out << "  \"label\": " << json(label).dump() << ",\n";
  out << "  \"dims\": [" << rho.dims().a << ", " << rho.dims().b << "],\n";
  out << "  \"matrix\": [\n";
  const auto& m = rho.mat();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "    [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ", ";
      out << "[" << format_double(m(r, c).real()) << ", " << format_double(m(r, c).imag()) << "]";
    }
    out << "]" << (r + 1 < m.rows() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

void write_state(const std::filesystem::path& path, const DensityMatrix& rho,
                 const std::string& label) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, path.string() + ": cannot open for writing");
  out << format_state(rho, label);
}

BasisSpec basis_from_name(const std::string& name, int dim) {
  if (name == "computational") return BasisSpec::computational(dim);
  if (name == "fourier") return BasisSpec::fourier(dim);
  throw Error(ErrorKind::Parse, "unknown basis '" + name + "' (computational, fourier)");
}

namespace {

Budget budget_from_json(const json& b, Located at, const std::string& key, Budget base) {
  if (!b.is_object()) fail(at.source, key_line(at.text, key), "'" + key + "' must be an object");
  if (b.contains("restarts")) base.restarts = b["restarts"].get<int>();
  if (b.contains("max_evals")) base.max_evals = b["max_evals"].get<int>();
  if (b.contains("ftol")) base.ftol = b["ftol"].get<double>();
  if (base.restarts <= 0 || base.max_evals <= 0 || !(base.ftol > 0.0)) {
    fail(at.source, key_line(at.text, key), "budget fields must be positive");
  }
  return base;
}

double wrap_phase(double x) {
  double r = std::fmod(x, 2.0 * M_PI);
  if (r < 0.0) r += 2.0 * M_PI;
  return r >= 2.0 * M_PI ? 0.0 : r;
}

PhaseEnsemble ensemble_from_json(const json& e, int dim, Located at) {
  const int line = key_line(at.text, "ensemble");
  if (!e.is_object()) fail(at.source, line, "'ensemble' must be an object");
  if (e.contains("levels")) return PhaseEnsemble::uniform_grid(dim, e["levels"].get<int>());
  const bool in_pi = e.contains("phases_over_pi");
  const json& rows = in_pi ? e["phases_over_pi"] : e.value("phases", json());
  if (!rows.is_array() || rows.empty()) {
    fail(at.source, line, "'ensemble' needs 'levels', 'phases' or 'phases_over_pi'");
  }
  std::vector<RealVector> phases;
  for (const json& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      fail(at.source, line, "each phase vector must have d_A = " + std::to_string(dim) + " entries",
           ErrorKind::DimensionMismatch);
    }
    RealVector phi(dim);
    for (int j = 0; j < dim; ++j) {
      const double v = row[j].get<double>();
      phi(j) = in_pi ? wrap_phase(v * M_PI) : v;
    }
    phases.push_back(std::move(phi));
  }
  std::vector<double> priors;
  if (e.contains("priors")) {
    priors = e["priors"].get<std::vector<double>>();
  } else {
    priors.assign(phases.size(), 1.0 / static_cast<double>(phases.size()));
  }
  return PhaseEnsemble(std::move(phases), std::move(priors));
}

StateFile load_state_ref(const std::string& ref, const std::filesystem::path& base_dir,
                         Located at) {
  if (ref.rfind("fixture:", 0) == 0) {
    const std::string name = ref.substr(8);
    auto rho = fixture(name);
    if (!rho) fail(at.source, key_line(at.text, "state"), "unknown fixture '" + name + "'");
    return StateFile{name, *rho};
  }
  const std::filesystem::path p = base_dir / ref;
  if (!std::filesystem::exists(p)) {
    fail(at.source, key_line(at.text, "state"), "state file '" + p.string() + "' not found");
  }
  return read_state(p);
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text, const std::filesystem::path& base_dir,
                            const std::string& source) {
  const Located at{text, source};
  const json root = parse_json(text, source);
  if (!root.is_object()) fail(source, 1, "scenario file must be a JSON object");
  check_version(root, at);

  try {
    ScenarioFile sc;
    sc.label = root.value("label", std::string());
    if (root.contains("state")) {
      sc.states.push_back(load_state_ref(root["state"].get<std::string>(), base_dir, at));
    }
    if (root.contains("states")) {
      for (const json& s : root["states"]) {
        sc.states.push_back(load_state_ref(s.get<std::string>(), base_dir, at));
      }
    }
    if (sc.states.empty()) fail(source, 1, "scenario needs 'state' or 'states'");
    const Dims dims = sc.states.front().state.dims();
    for (const StateFile& s : sc.states) {
      if (!(s.state.dims() == dims)) {
        fail(source, key_line(text, "states"), "all scenario states must share dims",
             ErrorKind::DimensionMismatch);
      }
    }

    if (root.contains("basis")) {
      const json& b = root["basis"];
      if (b.is_string()) {
        sc.basis = basis_from_name(b.get<std::string>(), dims.a);
      } else {
        sc.basis = BasisSpec(parse_matrix(b, "basis", at, dims.a));
      }
    }
    if (root.contains("ensemble")) sc.ensemble = ensemble_from_json(root["ensemble"], dims.a, at);

    if (root.contains("measurement")) {
      const json& m = root["measurement"];
      const std::string scope = m.value("scope", std::string("joint"));
      if (scope == "joint") {
        sc.scope = MeasurementScope::Joint;
      } else if (scope == "local_a") {
        sc.scope = MeasurementScope::LocalA;
      } else {
        fail(source, key_line(text, "scope"), "measurement scope must be 'joint' or 'local_a'");
      }
      if (m.contains("povm")) {
        std::vector<ComplexMatrix> el;
        for (std::size_t k = 0; k < m["povm"].size(); ++k) {
          el.push_back(parse_matrix(m["povm"][k], "povm", at));
        }
        sc.povm = Measurement(std::move(el));
        if (sc.povm->dim() != dims.total()) {
          fail(source, key_line(text, "povm"), "POVM dimension must equal d_A * d_B",
               ErrorKind::DimensionMismatch);
        }
      }
    }

    if (root.contains("budget")) sc.budget = budget_from_json(root["budget"], at, "budget", Budget{});

    if (root.contains("adversary")) {
      const json& a = root["adversary"];
      AdversaryModel model;
      const std::string kind = a.value("kind", std::string("weak"));
      if (kind == "weak") {
        model.kind = AdversaryKind::Weak;
        model.budget = WeakGameBudget{}.outer;
      } else if (kind == "strong") {
        model.kind = AdversaryKind::Strong;
        model.budget = convex_roof_budget();
      } else {
        fail(source, key_line(text, "kind"), "adversary kind must be 'weak' or 'strong'");
      }
      if (a.contains("m")) model.m = a["m"].get<int>();
      if (a.contains("budget")) model.budget = budget_from_json(a["budget"], at, "budget", model.budget);
      sc.quantity = a.value("quantity", model.kind == AdversaryKind::Strong ? "skew" : "mi");
      if (sc.quantity != "mi" && sc.quantity != "skew") {
        fail(source, key_line(text, "quantity"), "adversary quantity must be 'mi' or 'skew'");
      }
      if (model.kind == AdversaryKind::Strong && sc.quantity != "skew") {
        fail(source, key_line(text, "quantity"), "the strong adversary game is scored by 'skew'");
      }
      sc.adversary = model;
    }

    if (root.contains("channel")) {
      const json& kr = root["channel"].value("kraus", json());
      if (!kr.is_array() || kr.empty()) fail(source, key_line(text, "channel"), "'channel.kraus' must list matrices");
      std::vector<ComplexMatrix> ks;
      for (const json& k : kr) ks.push_back(parse_matrix(k, "kraus", at, dims.total()));
      try {
        sc.channel = KrausChannel(dims, std::move(ks));
      } catch (const Error& e) {
        fail(source, key_line(text, "channel"), e.what(), e.kind());
      }
    }

    if (root.contains("seed")) sc.seed = root["seed"].get<std::uint64_t>();
    return sc;
  } catch (const json::exception& e) {
    fail(source, 1, std::string("malformed scenario field: ") + e.what());
  } catch (const Error& e) {
    const std::string what = e.what();
    // Already anchored messages pass through unchanged.
    if (what.rfind(source + ":", 0) == 0 || e.kind() == ErrorKind::Parse) throw;
    fail(source, 1, what, e.kind());
  }
}

ScenarioFile read_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text(path), path.parent_path(), path.string());
}

}  // namespace qkit::io

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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qkit/adversary.hpp"
#include "qkit/channels.hpp"
#include "qkit/classify.hpp"
#include "qkit/core.hpp"
#include "qkit/interferometer.hpp"
#include "qkit/optimize.hpp"

namespace qkit::io {

inline constexpr int kFormatVersion = 1;

struct StateFile {
  std::string label;
  DensityMatrix state;
};

/// Parses a state document. Errors are ErrorKind::Parse (or the validation
/// kind) with a "<source>:<line>: " prefix.
StateFile parse_state(const std::string& text, const std::string& source = "<input>");
StateFile read_state(const std::filesystem::path& path);

/// 17 significant digits per component, one matrix row per line.
std::string format_state(const DensityMatrix& rho, const std::string& label);
void write_state(const std::filesystem::path& path, const DensityMatrix& rho,
                 const std::string& label);

/// "computational", "fourier", or a unitary matrix given as [re, im] rows.
BasisSpec basis_from_name(const std::string& name, int dim);

struct ScenarioFile {
  std::string label;
  std::vector<StateFile> states;
  std::optional<BasisSpec> basis;      // phase encoding basis, computational if absent
  std::optional<PhaseEnsemble> ensemble;
  std::optional<Measurement> povm;     // fixed measurement instead of the optimised one
  MeasurementScope scope = MeasurementScope::Joint;
  std::optional<AdversaryModel> adversary;
  std::string quantity = "mi";         // adversary game payoff: "mi" or "skew"
  std::optional<KrausChannel> channel; // applied to each state before encoding
  std::optional<Budget> budget;       // absent: each command's default
  std::uint64_t seed = 0;
};

/// State references resolve relative to the scenario file's directory, or
/// name a built-in fixture with "fixture:<name>".
ScenarioFile parse_scenario(const std::string& text, const std::filesystem::path& base_dir,
                            const std::string& source = "<input>");
ScenarioFile read_scenario(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);

/// %.17g, with non-finite values spelled as JSON null.
std::string format_double(double x);

}  // namespace qkit::io

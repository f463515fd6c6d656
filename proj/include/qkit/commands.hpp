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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkit/optimize.hpp"

namespace qkit::cli {

enum class Format { Text, Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitUnconverged = 3;

struct Options {
  std::string state;
  std::string scenario;
  std::string basis = "computational";
  std::string generator;  // comma-separated spectrum, empty for the default ramp
  std::optional<int> m;
  std::string budget;     // "restarts[,max_evals[,ftol]]"
  std::uint64_t seed = 0;
  Format format = Format::Text;
};

struct Report {
  std::string body;
  bool converged = true;
  int exit_code() const { return converged ? kExitOk : kExitUnconverged; }
};

/// Commands throw qkit::Error on input problems; run_command maps that to exit 2.
Report cmd_classify(const Options& opt);
Report cmd_measure(const Options& opt);
Report cmd_interfere(const Options& opt);
Report cmd_adversary(const Options& opt);
Report cmd_table1(const Options& opt);
/// Writes a built-in fixture as a state file document.
Report cmd_fixture(const std::string& name);

Format parse_format(const std::string& name);
std::vector<double> parse_spectrum(const std::string& text);
Budget parse_budget(const std::string& text, Budget base);

}  // namespace qkit::cli

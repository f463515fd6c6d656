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

#include <optional>
#include <string>
#include <vector>

#include "qkit/adversary.hpp"
#include "qkit/core.hpp"

namespace qkit {

/// (1 - p) I/4 + p |Phi+><Phi+|.
DensityMatrix werner(double p);
DensityMatrix bell_state();

/// Built-in canonical states by name, e.g. "bell", "cq", "werner_0.9".
std::optional<DensityMatrix> fixture(const std::string& name);
std::vector<std::string> fixture_names();

/// Rows of the scenario table, in display order.
std::vector<NamedState> table_fixtures();

}  // namespace qkit

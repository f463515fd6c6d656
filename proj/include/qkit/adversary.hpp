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

#include "qkit/classify.hpp"
#include "qkit/interferometer.hpp"
#include "qkit/measures.hpp"

namespace qkit {

enum class AdversaryKind { Weak, Strong };

const char* to_string(AdversaryKind kind);

struct AdversaryModel {
  AdversaryKind kind = AdversaryKind::Weak;
  Budget budget;
  std::optional<int> m;  // decomposition size, strong adversary only
};

/// Nested search limits: the adversary's basis (outer) and the prober's
/// measurement for each candidate basis (inner).
struct WeakGameBudget {
  Budget outer{4, 300, 1e-10};
  Budget inner{4, 400, 1e-10};
};

struct GameValue {
  double value = 0.0;
  std::optional<BasisSpec> basis;              // weak adversary's basis
  std::optional<Decomposition> decomposition;  // strong adversary's ensemble
  std::vector<BasisSpec> element_bases;        // strong: basis per outcome e
  std::optional<Measurement> prober;           // weak MI game: prober's reply
  bool converged = false;
};

/// min over A-bases (revealed to the prober) of the best projective mutual
/// information, in bits.
GameValue weak_game_mi(const DensityMatrix& rho, const PhaseEnsemble& ensemble,
                       const WeakGameBudget& budget = {}, std::uint64_t seed = 0);

GameValue weak_game_skew(const DensityMatrix& rho, const Budget& budget = {},
                         std::uint64_t seed = 0);

GameValue strong_game_skew(const DensityMatrix& rho, const AdversaryModel& model,
                           std::uint64_t seed = 0);

/// (U_e (x) I) rho (U_e (x) I)^dagger with U_e = sum_j |j><j^e|.
DensityMatrix apply_adversary_rotation(const DensityMatrix& rho, const BasisSpec& e_basis);

struct TableCell {
  double value = 0.0;
  bool converged = true;
  std::string error;  // non-empty when the cell could not be computed
};

struct TableRow {
  std::string label;
  TableCell coherence;     // skew of rho_A, computational basis
  TableCell bd_discord;    // computational basis
  TableCell discord;
  TableCell entanglement;
  bool incoherent = false;
  bool zero_bd_discord = false;
  bool zero_discord = false;
  bool separable = false;
  bool separable_certified = true;
};

struct TableBudget {
  Budget basis{16, 2000, 1e-10};
  Budget roof = convex_roof_budget();
};

struct NamedState {
  std::string label;
  DensityMatrix state;
};

std::vector<TableRow> scenario_table(const std::vector<NamedState>& states,
                                     const TableBudget& budget = {}, std::uint64_t seed = 0);

}  // namespace qkit

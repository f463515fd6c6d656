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
#include <vector>

#include "qkit/classify.hpp"
#include "qkit/core.hpp"

namespace qkit {

/// CPTP map in Kraus form on a declared bipartite split.
class KrausChannel {
 public:
  /// Throws NotCPTP unless sum K^dagger K = I within 1e-9.
  KrausChannel(Dims dims, std::vector<ComplexMatrix> kraus);

  static KrausChannel identity(Dims dims);
  static KrausChannel unitary(Dims dims, const ComplexMatrix& u);
  /// Projectors of `basis` on A, tensored with I_B.
  static KrausChannel dephasing(Dims dims, const BasisSpec& basis);
  /// (1 - p) * identity + p * dephasing.
  static KrausChannel partial_dephasing(Dims dims, const BasisSpec& basis, double p);
  /// (1 - p) rho + p I/d on the whole space.
  static KrausChannel depolarizing(Dims dims, double p);
  /// V applied to B only.
  static KrausChannel local_b(Dims dims, const ComplexMatrix& v);

  const Dims& dims() const { return dims_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  Dims dims_;
  std::vector<ComplexMatrix> kraus_;
};

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);
DensityMatrix dephase_A(const DensityMatrix& rho, const BasisSpec& basis);

/// Random element of a classical family on `dims` (extreme points every third trial).
DensityMatrix sample_classical_state(Family family, Dims dims, const BasisSpec* basis,
                                     int trial, Rng& rng);

struct ClassicalityReport {
  bool plain = true;          // Phi(sigma) stays in the family
  bool post_selected = true;  // every normalised branch stays in the family
  int trials = 0;
  int plain_failures = 0;
  int branch_failures = 0;
};

ClassicalityReport is_classical_operation(const KrausChannel& ch, Family family,
                                          const std::optional<BasisSpec>& basis, int trials = 500,
                                          std::uint64_t seed = 0);

enum class MeasureId { Coherence, BDDiscord, Discord, Entanglement };

const char* to_string(MeasureId id);
Family family_of(MeasureId id);
/// Allowed increase: 1e-9 exact, 1e-5 basis-optimised, 5e-3 convex roof.
double monotonicity_slack(MeasureId id);

struct MonotonicityReport {
  int trials = 0;
  int violations = 0;
  double max_violation = 0.0;  // max over trials of Q(out) - Q(in), may be negative
  double slack = 0.0;
  bool passed() const { return violations == 0; }
};

/// Q(Phi(rho)) <= Q(rho) + slack over random states. Throws PrereqFailed if
/// the channel is not classical for the measure's family.
MonotonicityReport monotonicity_check(const KrausChannel& ch, MeasureId measure,
                                      const std::optional<BasisSpec>& basis, int trials = 200,
                                      std::uint64_t seed = 0);

/// sum_n p_n Q(rho_n) <= Q(rho) + slack, rho_n the normalised Kraus branches.
MonotonicityReport selective_monotonicity_check(const KrausChannel& ch, MeasureId measure,
                                                const std::optional<BasisSpec>& basis,
                                                int trials = 200, std::uint64_t seed = 0);

}  // namespace qkit

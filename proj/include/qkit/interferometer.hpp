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

#include <vector>

#include "qkit/classify.hpp"
#include "qkit/core.hpp"
#include "qkit/optimize.hpp"

namespace qkit {

/// Finite prior over path-phase vectors phi_A (radians, each in [0, 2*pi)).
class PhaseEnsemble {
 public:
  PhaseEnsemble(std::vector<RealVector> phases, std::vector<double> priors);

  /// Uniform prior over all vectors with phi_1 = 0 and phi_j in
  /// {2*pi*k / levels}. levels = 2 gives the {0, pi} ensemble per path pair.
  static PhaseEnsemble uniform_grid(int dim, int levels = 2);

  int size() const { return static_cast<int>(phases_.size()); }
  int dim() const { return static_cast<int>(phases_.front().size()); }
  const std::vector<RealVector>& phases() const { return phases_; }
  const std::vector<double>& priors() const { return priors_; }

 private:
  std::vector<RealVector> phases_;
  std::vector<double> priors_;
};

/// POVM {M_j}: PSD elements summing to the identity.
class Measurement {
 public:
  explicit Measurement(std::vector<ComplexMatrix> elements);

  /// Rank-1 projective measurement onto the columns of a unitary.
  static Measurement projective(const ComplexMatrix& unitary);
  /// {P_j (x) I_B} for a basis on A.
  static Measurement local_a(const ComplexMatrix& unitary_a, int dim_b);

  int outcomes() const { return static_cast<int>(elements_.size()); }
  int dim() const { return static_cast<int>(elements_.front().rows()); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }

 private:
  std::vector<ComplexMatrix> elements_;
};

Measurement random_povm(int dim, int outcomes, Rng& rng);

/// Diagonal phase unitary sum_j exp(-i phi_j) |j><j| (x) I_B in `basis`.
ComplexMatrix encoding_unitary(const BasisSpec& basis, const RealVector& phi, int dim_b);
DensityMatrix encode(const DensityMatrix& rho, const BasisSpec& basis, const RealVector& phi);

/// Born rule Tr[M_j rho], clamped to [0, 1] and renormalised.
std::vector<double> outcome_dist(const DensityMatrix& rho_prime, const Measurement& m);

/// Conditional outcome distributions p(x | phi_k), one row per phase.
std::vector<std::vector<double>> conditional_dists(const DensityMatrix& rho,
                                                   const BasisSpec& basis,
                                                   const PhaseEnsemble& ensemble,
                                                   const Measurement& m);

/// I(X; Phi) in bits for priors and conditional rows.
double mutual_info_from(const std::vector<double>& priors,
                        const std::vector<std::vector<double>>& conditionals);

double mutual_info(const DensityMatrix& rho, const BasisSpec& basis,
                   const PhaseEnsemble& ensemble, const Measurement& m);

enum class MeasurementScope { Joint, LocalA };

struct BestMeasurement {
  Measurement measurement;
  double value = 0.0;
  bool converged = false;
};

/// Maximises mutual_info over rank-1 projective measurements (on AB, or on A
/// alone for LocalA). The result is a lower bound on the POVM supremum.
BestMeasurement best_measurement(const DensityMatrix& rho, const BasisSpec& basis,
                                 const PhaseEnsemble& ensemble, const Budget& budget = {},
                                 std::uint64_t seed = 0,
                                 MeasurementScope scope = MeasurementScope::Joint);

}  // namespace qkit

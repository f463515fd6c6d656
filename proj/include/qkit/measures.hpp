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
#include "qkit/optimize.hpp"

namespace qkit {

/// Pure-state ensemble {p_e, |psi_e>} realising a mixed state.
struct Decomposition {
  std::vector<double> weights;
  std::vector<PureState> states;

  ComplexMatrix reconstruct() const;
};

struct MeasureValue {
  double value = 0.0;
  std::optional<BasisSpec> basis;                // basis-minimised measures
  std::optional<Decomposition> decomposition;    // convex roof
  std::vector<BasisSpec> element_bases;          // one per decomposition element
  bool converged = true;
  int iterations = 0;
  int ensemble_size = 0;                         // m, convex roof only
};

/// Eigenvalues of the phase generator in its own basis: 0, 1, ..., d-1.
/// At d = 2 this is the projector onto the second path.
std::vector<double> default_generator_spectrum(int dim);
Observable generator_in_basis(const BasisSpec& basis, const std::vector<double>& spectrum);

/// Wigner-Yanase skew information -Tr([sqrt(rho), H]^2) / 2.
MeasureValue skew_info(const DensityMatrix& rho, const Observable& h);

/// Skew information of H (x) I_B. Throws GeneratorNotDiagonal if H does not
/// commute with the basis projectors.
MeasureValue bd_discord_skew(const DensityMatrix& rho, const BasisSpec& basis,
                             const Observable& generator);
MeasureValue bd_discord_skew(const DensityMatrix& rho, const BasisSpec& basis);

/// Skew information of the reduced state rho_A against the generator of `basis`.
MeasureValue coherence_skew(const DensityMatrix& rho, const BasisSpec& basis,
                            const std::vector<double>& spectrum = {});

/// min over A-bases of bd_discord_skew. Pure states are solved exactly.
MeasureValue discord_skew(const DensityMatrix& rho, const Budget& budget = {},
                          std::uint64_t seed = 0, const std::vector<double>& spectrum = {});

struct PureBasisMinimum {
  double value = 0.0;
  ComplexMatrix basis;  // columns: optimal |j_A>
};

/// Exact min over A-bases of Var(H_J (x) I) for a pure state. The variance is
/// concave in the diagonal of rho_A, and that diagonal ranges over the
/// permutohedron of rho_A's spectrum, so the minimum sits at a permutation
/// of the eigenbasis.
PureBasisMinimum pure_min_bd_skew(const ComplexVector& psi, Dims dims,
                                  const std::vector<double>& spectrum);

inline Budget convex_roof_budget() { return Budget{64, 2000, 1e-10}; }

/// rank^2 capped at 16, never below rank.
int default_ensemble_size(int rank);

/// Convex roof over m-element pure decompositions of the pure-state discord.
/// Decompositions are rows of an m x rank isometry applied to the scaled
/// eigenvectors; the isometry is optimised by Riemannian descent.
MeasureValue entanglement_skew(const DensityMatrix& rho, std::optional<int> m = std::nullopt,
                               const Budget& budget = convex_roof_budget(),
                               std::uint64_t seed = 0,
                               const std::vector<double>& spectrum = {});

/// Objective of the convex roof for a given isometry; exposed for gradient tests.
double convex_roof_objective(const ComplexMatrix& scaled_eigvecs, Dims dims,
                             const std::vector<double>& spectrum, const ComplexMatrix& isometry,
                             ComplexMatrix* grad);

/// Quantum Fisher information 2 sum (l_i - l_j)^2 / (l_i + l_j) |<i|H|j>|^2.
double qfi(const DensityMatrix& rho, const Observable& h);

}  // namespace qkit

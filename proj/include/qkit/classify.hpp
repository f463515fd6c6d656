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
#include <span>
#include <vector>

#include "qkit/core.hpp"
#include "qkit/optimize.hpp"

namespace qkit {

/// Orthonormal basis of one subsystem; column j of `unitary` is |j>.
class BasisSpec {
 public:
  explicit BasisSpec(ComplexMatrix unitary);
  static BasisSpec computational(int dim);
  /// |+>, |-> for dim 2; the discrete Fourier basis otherwise.
  static BasisSpec fourier(int dim);

  int dim() const { return static_cast<int>(unitary_.rows()); }
  const ComplexMatrix& unitary() const { return unitary_; }
  ComplexVector ket(int j) const { return unitary_.col(j); }

 private:
  ComplexMatrix unitary_;
};

enum class Family { Incoherent, ZeroBDDiscord, ZeroDiscord, Separable };

const char* to_string(Family family);

inline constexpr double kExactResidualTol = 1e-12;
inline constexpr double kOptimizedResidualTol = 1e-9;
inline constexpr double kPptTol = 1e-10;

struct ClassVerdict {
  Family family = Family::Incoherent;
  bool member = false;
  double residual = 0.0;
  std::optional<BasisSpec> witness;
  /// False when an optimisation budget ran out before the search settled.
  bool converged = true;
  /// False when the test is only necessary (PPT beyond 2x3).
  bool certified = true;
};

DensityMatrix make_incoherent(std::span<const double> probs, const BasisSpec& basis);
DensityMatrix make_cq(std::span<const double> probs, const BasisSpec& basis,
                      const std::vector<DensityMatrix>& b_states);
DensityMatrix make_separable(std::span<const double> probs,
                             const std::vector<DensityMatrix>& a_states,
                             const std::vector<DensityMatrix>& b_states);

/// Sum of squared off-diagonal A-block norms of rho written in `basis`
/// (columns of basis_unitary). With d_B = 1 this is the coherence residual.
double bd_residual(const ComplexMatrix& rho, Dims dims, const ComplexMatrix& basis_unitary);

ClassVerdict is_incoherent(const DensityMatrix& rho, const BasisSpec& basis);
ClassVerdict is_zero_bd_discord(const DensityMatrix& rho, const BasisSpec& basis);
ClassVerdict is_zero_discord(const DensityMatrix& rho, const Budget& budget = {},
                             std::uint64_t seed = 0);

ComplexMatrix partial_transpose_b(const ComplexMatrix& rho, Dims dims);
double ppt_min_eigenvalue(const DensityMatrix& rho);

/// PPT criterion, exact at 2x2 and 2x3; throws UnsupportedDims elsewhere.
ClassVerdict is_separable_2x2(const DensityMatrix& rho);
/// PPT at any size. Beyond 2x3 a non-member verdict still means "entangled",
/// while a member verdict is reported with certified = false.
ClassVerdict ppt_verdict(const DensityMatrix& rho);

void check_distribution(std::span<const double> probs, const char* what);

}  // namespace qkit

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

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "qkit/core.hpp"
#include "qkit/rng.hpp"

namespace qkit {

/// Optimizer limits. `restarts` independent starts, each allowed `max_evals`
/// objective evaluations (iterations for gradient methods); a run has
/// converged once the simplex value spread drops below `ftol`.
struct Budget {
  int restarts = 16;
  int max_evals = 2000;
  double ftol = 1e-10;
};

/// Two restarts agreeing this closely count as a confirmed minimum.
inline constexpr double kRestartAgreement = 1e-6;

using Objective = std::function<double(std::span<const double>)>;

struct SimplexResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  int evals = 0;
  bool converged = false;
};

/// Nelder-Mead downhill simplex (standard coefficients 1, 2, 1/2, 1/2).
/// Re-seeds the simplex around the incumbent after each convergence until a
/// fresh simplex fails to improve by more than ftol.
SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, double step,
                          int max_evals, double ftol);

/// Hermitian d x d matrix from d^2 real parameters (diagonal, then the
/// real/imaginary parts of the strict upper triangle).
ComplexMatrix hermitian_from_params(std::span<const double> p, int dim);

struct UnitarySearchResult {
  ComplexMatrix unitary;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
  int evals = 0;
  int restarts_run = 0;
  std::vector<double> restart_values;
};

/// Multi-start minimisation of f over U(dim), U = U_ref * exp(iG).
/// Start k uses seeds[k] as U_ref while seeds last, then Haar-random
/// references drawn from rng.split(k). Starts run in fixed batches and stop
/// early once a value within floor_tol of `floor` (a known lower bound) is
/// found, so the outcome is identical for any worker count.
UnitarySearchResult minimize_over_unitaries(
    int dim, const std::function<double(const ComplexMatrix&)>& f,
    const std::vector<ComplexMatrix>& seeds, const Budget& budget, const Rng& rng,
    double floor = -std::numeric_limits<double>::infinity(), double floor_tol = 1e-14);

/// Value and Euclidean gradient 2*df/dX^* of a real function of a complex matrix.
using StiefelObjective = std::function<double(const ComplexMatrix& x, ComplexMatrix* grad)>;

struct StiefelResult {
  ComplexMatrix x;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

/// Riemannian steepest descent with Armijo backtracking on the complex
/// Stiefel manifold {X : X^dagger X = I}, polar retraction.
StiefelResult minimize_on_stiefel(const StiefelObjective& f, ComplexMatrix x0, int max_iters,
                                  double ftol, double floor = 0.0);

/// Nearest isometry (polar factor) of a full-column-rank matrix.
ComplexMatrix polar_isometry(const ComplexMatrix& y);

}  // namespace qkit

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

#include "qkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qkit/parallel.hpp"
#include "qkit/rng.hpp"

namespace qkit {

namespace {

constexpr double kRankTol = 1e-12;
constexpr double kEmptyWeight = 1e-15;

std::vector<double> resolve_spectrum(const std::vector<double>& spectrum, int dim) {
  if (spectrum.empty()) return default_generator_spectrum(dim);
  if (static_cast<int>(spectrum.size()) != dim) {
    throw Error(ErrorKind::DimensionMismatch, "generator spectrum length must equal d_A");
  }
  return spectrum;
}

// psi (length a*b) viewed as an a x b matrix, row index on A.
ComplexMatrix as_matrix(const ComplexVector& psi, Dims dims) {
  ComplexMatrix m(dims.a, dims.b);
  for (int i = 0; i < dims.a; ++i) {
    for (int k = 0; k < dims.b; ++k) m(i, k) = psi(i * dims.b + k);
  }
  return m;
}

struct PureTerm {
  double value = 0.0;         // p * Var of the normalised state
  ComplexMatrix basis;        // optimal basis, columns
  ComplexMatrix shifted_sq;   // (K_A - mean)^2 on A, for the gradient
};

// Minimum over A-bases of p * Var(H_J (x) I) for an unnormalised pure state
// with reduced matrix `reduced` (trace p).
PureTerm pure_term(const ComplexMatrix& reduced, const std::vector<double>& h, bool want_grad) {
  const int a = static_cast<int>(reduced.rows());
  const double p = reduced.trace().real();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (reduced + reduced.adjoint()));
  const RealVector& mu = solver.eigenvalues();

  std::vector<int> perm(a);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm = perm;
  double best = std::numeric_limits<double>::infinity();
  do {
    double first = 0.0;
    double second = 0.0;
    for (int j = 0; j < a; ++j) {
      const double q = std::max(mu(perm[j]), 0.0);
      first += h[j] * q;
      second += h[j] * h[j] * q;
    }
    const double v = second - first * first / p;
    if (v < best) {
      best = v;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  PureTerm out;
  out.value = std::max(best, 0.0);
  out.basis.resize(a, a);
  for (int j = 0; j < a; ++j) out.basis.col(j) = solver.eigenvectors().col(best_perm[j]);
  if (want_grad) {
    double mean = 0.0;
    for (int j = 0; j < a; ++j) mean += h[j] * std::max(mu(best_perm[j]), 0.0);
    mean /= p;
    RealVector shifted(a);
    for (int j = 0; j < a; ++j) shifted(j) = (h[j] - mean) * (h[j] - mean);
    out.shifted_sq = out.basis * shifted.asDiagonal() * out.basis.adjoint();
  }
  return out;
}

// Generator eigenvalue attached to each row/column of the AB space.
RealVector expanded_spectrum(const std::vector<double>& h, int db) {
  RealVector k(static_cast<Eigen::Index>(h.size()) * db);
  for (std::size_t j = 0; j < h.size(); ++j) {
    for (int b = 0; b < db; ++b) k(static_cast<Eigen::Index>(j) * db + b) = h[j];
  }
  return k;
}

// Skew information of (U diag(h) U^dagger) (x) I with sqrt(rho) given:
// in the rotated frame it is 1/2 sum_ij |S'_ij|^2 (k_i - k_j)^2.
double rotated_skew(const ComplexMatrix& sqrt_rho, Dims dims, const ComplexMatrix& u,
                    const RealVector& k) {
  const ComplexMatrix w = kron(u, identity(dims.b));
  const ComplexMatrix s = w.adjoint() * sqrt_rho * w;
  double total = 0.0;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < s.cols(); ++j) {
      const double dk = k(i) - k(j);
      total += std::norm(s(i, j)) * dk * dk;
    }
  }
  return total;
}

}  // namespace

ComplexMatrix Decomposition::reconstruct() const {
  const auto n = states.front().amplitudes().size();
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t e = 0; e < states.size(); ++e) {
    rho += weights[e] * projector(states[e].amplitudes());
  }
  return rho;
}

std::vector<double> default_generator_spectrum(int dim) {
  std::vector<double> h(dim);
  std::iota(h.begin(), h.end(), 0.0);
  return h;
}

Observable generator_in_basis(const BasisSpec& basis, const std::vector<double>& spectrum) {
  const std::vector<double> h = resolve_spectrum(spectrum, basis.dim());
  RealVector diag = Eigen::Map<const RealVector>(h.data(), static_cast<Eigen::Index>(h.size()));
  return Observable(basis.unitary() * diag.asDiagonal() * basis.unitary().adjoint());
}

MeasureValue skew_info(const DensityMatrix& rho, const Observable& h) {
  if (h.dim() != rho.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "observable and state dimensions differ");
  }
  const ComplexMatrix s = matrix_sqrt_psd(rho);
  const ComplexMatrix c = s * h.mat() - h.mat() * s;
  MeasureValue out;
  out.value = std::max(0.0, -0.5 * (c * c).trace().real());
  return out;
}

MeasureValue bd_discord_skew(const DensityMatrix& rho, const BasisSpec& basis,
                             const Observable& generator) {
  const Dims dims = rho.dims();
  if (basis.dim() != dims.a || generator.dim() != dims.a) {
    throw Error(ErrorKind::DimensionMismatch, "basis/generator dimension must equal d_A");
  }
  for (int j = 0; j < dims.a; ++j) {
    const ComplexMatrix p = projector(basis.ket(j));
    const double comm = (generator.mat() * p - p * generator.mat()).cwiseAbs().maxCoeff();
    if (comm > kHermitianTol) {
      throw Error(ErrorKind::GeneratorNotDiagonal,
                  "generator does not commute with basis projector " + std::to_string(j));
    }
  }
  MeasureValue out = skew_info(rho, Observable(kron(generator.mat(), identity(dims.b))));
  out.basis = basis;
  return out;
}

MeasureValue bd_discord_skew(const DensityMatrix& rho, const BasisSpec& basis) {
  return bd_discord_skew(rho, basis, generator_in_basis(basis, {}));
}

MeasureValue coherence_skew(const DensityMatrix& rho, const BasisSpec& basis,
                            const std::vector<double>& spectrum) {
  const DensityMatrix reduced = partial_trace(rho, Subsystem::A);
  MeasureValue out = skew_info(reduced, generator_in_basis(basis, spectrum));
  out.basis = basis;
  return out;
}

PureBasisMinimum pure_min_bd_skew(const ComplexVector& psi, Dims dims,
                                  const std::vector<double>& spectrum) {
  const std::vector<double> h = resolve_spectrum(spectrum, dims.a);
  const ComplexMatrix m = as_matrix(psi, dims);
  PureTerm t = pure_term(m * m.adjoint(), h, false);
  return {t.value / psi.squaredNorm(), std::move(t.basis)};
}

MeasureValue discord_skew(const DensityMatrix& rho, const Budget& budget, std::uint64_t seed,
                          const std::vector<double>& spectrum) {
  const Dims dims = rho.dims();
  if (dims.a > 4) throw Error(ErrorKind::UnsupportedDims, "discord_skew supports d_A <= 4");
  const std::vector<double> h = resolve_spectrum(spectrum, dims.a);
  MeasureValue out;

  const Eigensystem es = eig_hermitian(rho.mat());
  if (es.values.size() < 2 || es.values(1) <= kRankTol) {
    const PureBasisMinimum pm = pure_min_bd_skew(es.vectors.col(0), dims, h);
    out.value = pm.value;
    out.basis = BasisSpec(pm.basis);
    return out;
  }

  const ComplexMatrix sqrt_rho = sqrt_psd(rho.mat());
  const RealVector k = expanded_spectrum(h, dims.b);
  const Eigensystem reduced = eig_hermitian(partial_trace(rho.mat(), dims, Subsystem::A));
  std::vector<ComplexMatrix> seeds{reduced.vectors, reduced.vectors.rowwise().reverse()};
  auto objective = [&](const ComplexMatrix& u) { return rotated_skew(sqrt_rho, dims, u, k); };
  const UnitarySearchResult found =
      minimize_over_unitaries(dims.a, objective, seeds, budget, Rng(seed), 0.0, 1e-14);

  out.value = std::max(found.value, 0.0);
  out.basis = BasisSpec(found.unitary);
  out.converged = found.converged;
  out.iterations = found.evals;
  return out;
}

int default_ensemble_size(int rank) { return std::max(rank, std::min(rank * rank, 16)); }

double convex_roof_objective(const ComplexMatrix& scaled_eigvecs, Dims dims,
                             const std::vector<double>& spectrum, const ComplexMatrix& isometry,
                             ComplexMatrix* grad) {
  const ComplexMatrix elements = scaled_eigvecs * isometry.transpose();  // n x m
  const Eigen::Index m = elements.cols();
  ComplexMatrix phi;
  if (grad) phi = ComplexMatrix::Zero(elements.rows(), m);
  double total = 0.0;
  for (Eigen::Index e = 0; e < m; ++e) {
    const ComplexMatrix me = as_matrix(elements.col(e), dims);
    const ComplexMatrix reduced = me * me.adjoint();
    if (reduced.trace().real() <= kEmptyWeight) continue;
    const PureTerm t = pure_term(reduced, spectrum, grad != nullptr);
    total += t.value;
    if (grad) {
      const ComplexMatrix g = t.shifted_sq * me;
      for (int i = 0; i < dims.a; ++i) {
        for (int b = 0; b < dims.b; ++b) phi(i * dims.b + b, e) = g(i, b);
      }
    }
  }
  if (grad) *grad = 2.0 * (scaled_eigvecs.adjoint() * phi).transpose();
  return total;
}

MeasureValue entanglement_skew(const DensityMatrix& rho, std::optional<int> m,
                               const Budget& budget, std::uint64_t seed,
                               const std::vector<double>& spectrum) {
  const Dims dims = rho.dims();
  if (dims.a > 4 || dims.b > 4) {
    throw Error(ErrorKind::UnsupportedDims, "entanglement_skew supports dims up to (4, 4)");
  }
  const std::vector<double> h = resolve_spectrum(spectrum, dims.a);
  const Eigensystem es = eig_hermitian(rho.mat());
  const int n = rho.dim();
  const int rank = std::max(1, static_cast<int>((es.values.array() > kRankTol).count()));
  const int size = m.value_or(default_ensemble_size(rank));
  if (size < rank) {
    throw Error(ErrorKind::BadM, "ensemble size m = " + std::to_string(size) +
                                     " is below the state rank " + std::to_string(rank));
  }

  ComplexMatrix scaled(n, rank);
  for (int i = 0; i < rank; ++i) scaled.col(i) = std::sqrt(es.values(i)) * es.vectors.col(i);

  MeasureValue out;
  out.ensemble_size = size;
  ComplexMatrix best_x;

  if (rank == 1) {
    // Every decomposition of a pure state is the state itself.
    best_x = ComplexMatrix::Zero(size, 1);
    best_x(0, 0) = 1.0;
  } else {
    constexpr int kBatch = 8;
    const int restarts = std::max(1, budget.restarts);
    std::vector<StiefelResult> runs(restarts);
    const Rng rng(seed);
    auto objective = [&](const ComplexMatrix& x, ComplexMatrix* g) {
      return convex_roof_objective(scaled, dims, h, x, g);
    };
    auto run_start = [&](int k) {
      ComplexMatrix x0;
      if (k == 0) {
        x0 = ComplexMatrix::Identity(size, rank);  // spectral decomposition
      } else {
        Rng child = rng.split(static_cast<std::uint64_t>(k));
        x0 = random_unitary(size, child).leftCols(rank);
      }
      runs[k] = minimize_on_stiefel(objective, std::move(x0), budget.max_evals, budget.ftol);
    };

    int best = -1;
    int done = 0;
    std::vector<double> values;
    for (int start = 0; start < restarts; start += kBatch) {
      const int count = std::min(kBatch, restarts - start);
      parallel_for(count, [&](int i) { run_start(start + i); });
      for (int k = start; k < start + count; ++k) {
        values.push_back(runs[k].value);
        out.iterations += runs[k].iterations;
        if (best < 0 || runs[k].value < runs[best].value) best = k;
      }
      done = start + count;
      if (runs[best].value <= 1e-12) break;
    }
    std::sort(values.begin(), values.end());
    const bool at_floor = runs[best].value <= 1e-12;
    const bool agreement = done >= 2 && values[1] - values[0] <= kRestartAgreement;
    out.converged = runs[best].converged && (at_floor || agreement);
    best_x = runs[best].x;
  }

  // Witness: drop empty elements, normalise, and re-derive the value from it.
  const ComplexMatrix elements = scaled * best_x.transpose();
  Decomposition dec;
  double weight_sum = 0.0;
  for (Eigen::Index e = 0; e < elements.cols(); ++e) {
    const double p = elements.col(e).squaredNorm();
    if (p <= kEmptyWeight) continue;
    ComplexVector psi = elements.col(e) / std::sqrt(p);
    psi /= psi.norm();
    dec.weights.push_back(p);
    dec.states.emplace_back(dims, std::move(psi));
    weight_sum += p;
  }
  out.value = 0.0;
  for (std::size_t e = 0; e < dec.weights.size(); ++e) {
    dec.weights[e] /= weight_sum;
    const PureBasisMinimum pm = pure_min_bd_skew(dec.states[e].amplitudes(), dims, h);
    out.value += dec.weights[e] * pm.value;
    out.element_bases.emplace_back(pm.basis);
  }
  out.decomposition = std::move(dec);
  return out;
}

double qfi(const DensityMatrix& rho, const Observable& h) {
  if (h.dim() != rho.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "observable and state dimensions differ");
  }
  const Eigensystem es = eig_hermitian(rho.mat());
  const ComplexMatrix hv = es.vectors.adjoint() * h.mat() * es.vectors;
  double f = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    for (Eigen::Index j = 0; j < es.values.size(); ++j) {
      const double li = std::max(es.values(i), 0.0);
      const double lj = std::max(es.values(j), 0.0);
      const double s = li + lj;
      if (s <= 1e-12) continue;
      f += (li - lj) * (li - lj) / s * std::norm(hv(i, j));
    }
  }
  return 2.0 * f;
}

}  // namespace qkit

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

// Reference computations for the tests. Each one takes a different route
// from the library code it checks: explicit index loops, Eigen's generic
// matrix functions, closed forms, or brute-force grids.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline M partial_trace_b(const M& rho, int da, int db) {
  M out = M::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
  return out;
}

inline M partial_trace_a(const M& rho, int da, int db) {
  M out = M::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += rho(k * db + i, k * db + j);
  return out;
}

inline M partial_transpose_b(const M& rho, int da, int db) {
  M out(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < db; ++k)
      for (int j = 0; j < da; ++j)
        for (int l = 0; l < db; ++l) out(i * db + k, j * db + l) = rho(i * db + l, j * db + k);
  return out;
}

inline double min_eig(const M& h) {
  Eigen::SelfAdjointEigenSolver<M> es(0.5 * (h + h.adjoint()));
  return es.eigenvalues().minCoeff();
}

/// -Tr([sqrt(rho), H]^2) / 2 with the square root from Eigen's generic
/// matrix-function module. Full-rank rho only.
inline double skew(const M& rho, const M& h) {
  const M s = rho.sqrt();
  const M c = s * h - h * s;
  return -0.5 * (c * c).trace().real();
}

inline double variance(const V& psi, const M& h) {
  const C m1 = psi.dot(h * psi);
  const C m2 = psi.dot(h * h * psi);
  return m2.real() - m1.real() * m1.real();
}

/// Fisher information of the pure-state family exp(-i t H)|psi> by finite
/// differences of the fidelity: F = 8 (1 - |<psi(t)|psi(0)>|) / t^2.
inline double pure_qfi_fd(const V& psi, const M& h) {
  const double t = 1e-4;
  const M u = (C(0, -t) * h).exp();
  const double f = std::abs(psi.dot(u * psi));
  return 8.0 * (1.0 - f) / (t * t);
}

/// Wootters concurrence of a two-qubit state.
inline double concurrence(const M& rho) {
  M yy = M::Zero(4, 4);
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  const M tilde = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<M> es(rho * tilde);
  std::vector<double> l(4);
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

/// Qubit basis {|n>, |n_perp>} for Bloch angles (theta, phi).
inline M bloch_basis(double theta, double phi) {
  M u(2, 2);
  u(0, 0) = std::cos(theta / 2);
  u(1, 0) = std::polar(std::sin(theta / 2), phi);
  u(0, 1) = -std::polar(std::sin(theta / 2), -phi);
  u(1, 1) = std::cos(theta / 2);
  return u;
}

/// Skew of rho against (U |1><1| U^dagger) (x) I_B.
inline double bd_skew(const M& rho, int db, const M& u) {
  M h = M::Zero(2, 2);
  h(1, 1) = 1;
  const M hu = u * h * u.adjoint();
  return skew(rho, Eigen::kroneckerProduct(hu, M::Identity(db, db)).eval());
}

/// Minimum of the BD skew over a theta x phi grid of qubit bases.
inline double grid_min_bd_skew(const M& rho, int db, int nt = 40, int np = 25) {
  double best = 1e300;
  for (int i = 0; i <= nt; ++i) {
    for (int j = 0; j < np; ++j) {
      const double theta = M_PI * i / nt;
      const double phi = 2 * M_PI * j / np;
      best = std::min(best, bd_skew(rho, db, bloch_basis(theta, phi)));
    }
  }
  return best;
}

/// Off-diagonal block norm of rho in a qubit basis, minimised over a grid.
inline double grid_min_bd_residual(const M& rho, int db, int nt = 40, int np = 25) {
  double best = 1e300;
  for (int i = 0; i <= nt; ++i) {
    for (int j = 0; j < np; ++j) {
      const M u = bloch_basis(M_PI * i / nt, 2 * M_PI * j / np);
      const M w = Eigen::kroneckerProduct(u, M::Identity(db, db)).eval();
      const M r = w.adjoint() * rho * w;
      best = std::min(best, 2.0 * r.block(0, db, db, db).squaredNorm());
    }
  }
  return best;
}

inline double entropy(const std::vector<double>& p) {
  double h = 0;
  for (double x : p)
    if (x > 0) h -= x * std::log2(x);
  return h;
}

/// H(X) - H(X | Phi) from a prior and conditional rows.
inline double mutual_info(const std::vector<double>& prior,
                          const std::vector<std::vector<double>>& rows) {
  std::vector<double> marg(rows[0].size(), 0.0);
  double cond = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t x = 0; x < marg.size(); ++x) marg[x] += prior[k] * rows[k][x];
    cond += prior[k] * entropy(rows[k]);
  }
  return entropy(marg) - cond;
}

/// Born-rule rows for rho_k = U_k rho U_k^dagger with U_k = diag(exp(-i phi_k)) (x) I.
inline std::vector<std::vector<double>> rows(const M& rho, int da, int db,
                                             const std::vector<std::vector<double>>& phases,
                                             const std::vector<M>& povm) {
  std::vector<std::vector<double>> out;
  for (const auto& phi : phases) {
    M u = M::Zero(da * db, da * db);
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) u(j * db + k, j * db + k) = std::polar(1.0, -phi[j]);
    const M r = u * rho * u.adjoint();
    std::vector<double> row;
    for (const M& e : povm) row.push_back((e * r).trace().real());
    out.push_back(row);
  }
  return out;
}

}  // namespace oracle

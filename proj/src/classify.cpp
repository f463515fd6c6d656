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

#include "qkit/classify.hpp"

#include <cmath>
#include <string>

#include "qkit/rng.hpp"

namespace qkit {

BasisSpec::BasisSpec(ComplexMatrix unitary) : unitary_(std::move(unitary)) {
  const double err = unitarity_error(unitary_);
  if (err > kUnitaryTol) {
    throw Error(ErrorKind::NotUnitary,
                "basis matrix is not unitary (deviation " + std::to_string(err) + ")");
  }
}

BasisSpec BasisSpec::computational(int dim) { return BasisSpec(identity(dim)); }

BasisSpec BasisSpec::fourier(int dim) {
  ComplexMatrix f(dim, dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      const int t = (j * k) % dim;
      // Quarter turns are exact so that d = 2 and d = 4 stay real or imaginary.
      if ((4 * t) % dim == 0) {
        static const Complex quarter[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        f(j, k) = norm * quarter[4 * t / dim];
      } else {
        f(j, k) = std::polar(norm, 2.0 * M_PI * t / dim);
      }
    }
  }
  return BasisSpec(f);
}

const char* to_string(Family family) {
  switch (family) {
    case Family::Incoherent: return "Incoherent";
    case Family::ZeroBDDiscord: return "ZeroBDDiscord";
    case Family::ZeroDiscord: return "ZeroDiscord";
    case Family::Separable: return "Separable";
  }
  return "Unknown";
}

void check_distribution(std::span<const double> probs, const char* what) {
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) {
      throw Error(ErrorKind::BadDistribution, std::string(what) + " has a negative entry");
    }
    total += p;
  }
  if (probs.empty() || std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorKind::BadDistribution,
                std::string(what) + " sums to " + std::to_string(total) + ", expected 1");
  }
}

DensityMatrix make_incoherent(std::span<const double> probs, const BasisSpec& basis) {
  check_distribution(probs, "probabilities");
  if (static_cast<int>(probs.size()) != basis.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "need one probability per basis vector");
  }
  ComplexMatrix rho = ComplexMatrix::Zero(basis.dim(), basis.dim());
  for (int j = 0; j < basis.dim(); ++j) rho += probs[j] * projector(basis.ket(j));
  return DensityMatrix::trusted(Dims{basis.dim(), 1}, std::move(rho));
}

DensityMatrix make_cq(std::span<const double> probs, const BasisSpec& basis,
                      const std::vector<DensityMatrix>& b_states) {
  check_distribution(probs, "probabilities");
  const int da = basis.dim();
  if (static_cast<int>(probs.size()) != da || static_cast<int>(b_states.size()) != da) {
    throw Error(ErrorKind::DimensionMismatch,
                "make_cq needs d_A probabilities and d_A states on B");
  }
  const int db = b_states.front().dim();
  ComplexMatrix rho = ComplexMatrix::Zero(da * db, da * db);
  for (int j = 0; j < da; ++j) {
    if (b_states[j].dim() != db) {
      throw Error(ErrorKind::DimensionMismatch, "states on B differ in dimension");
    }
    rho += probs[j] * kron(projector(basis.ket(j)), b_states[j].mat());
  }
  return DensityMatrix::trusted(Dims{da, db}, std::move(rho));
}

DensityMatrix make_separable(std::span<const double> probs,
                             const std::vector<DensityMatrix>& a_states,
                             const std::vector<DensityMatrix>& b_states) {
  check_distribution(probs, "probabilities");
  if (a_states.size() != probs.size() || b_states.size() != probs.size()) {
    throw Error(ErrorKind::DimensionMismatch, "make_separable needs equal-length lists");
  }
  const int da = a_states.front().dim();
  const int db = b_states.front().dim();
  ComplexMatrix rho = ComplexMatrix::Zero(da * db, da * db);
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (a_states[k].dim() != da || b_states[k].dim() != db) {
      throw Error(ErrorKind::DimensionMismatch, "component states differ in dimension");
    }
    rho += probs[k] * kron(a_states[k].mat(), b_states[k].mat());
  }
  return DensityMatrix::trusted(Dims{da, db}, std::move(rho));
}

double bd_residual(const ComplexMatrix& rho, Dims dims, const ComplexMatrix& basis_unitary) {
  const int da = dims.a;
  const int db = dims.b;
  double residual = 0.0;
  // Block (i, j) in the rotated frame is sum_kl conj(U_ki) U_lj rho_block(k, l).
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      if (i == j) continue;
      ComplexMatrix block = ComplexMatrix::Zero(db, db);
      for (int k = 0; k < da; ++k) {
        const Complex uki = std::conj(basis_unitary(k, i));
        if (uki == Complex(0.0)) continue;
        for (int l = 0; l < da; ++l) {
          const Complex coeff = uki * basis_unitary(l, j);
          if (coeff == Complex(0.0)) continue;
          block += coeff * rho.block(k * db, l * db, db, db);
        }
      }
      residual += block.squaredNorm();
    }
  }
  return residual;
}

ClassVerdict is_incoherent(const DensityMatrix& rho, const BasisSpec& basis) {
  if (rho.dims().b != 1) {
    throw Error(ErrorKind::DimensionMismatch, "is_incoherent expects a single system (d_B = 1)");
  }
  if (basis.dim() != rho.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "basis dimension does not match state");
  }
  ClassVerdict v;
  v.family = Family::Incoherent;
  v.residual = bd_residual(rho.mat(), rho.dims(), basis.unitary());
  v.member = v.residual <= kExactResidualTol;
  if (v.member) v.witness = basis;
  return v;
}

ClassVerdict is_zero_bd_discord(const DensityMatrix& rho, const BasisSpec& basis) {
  if (basis.dim() != rho.dims().a) {
    throw Error(ErrorKind::DimensionMismatch, "basis dimension does not match d_A");
  }
  ClassVerdict v;
  v.family = Family::ZeroBDDiscord;
  v.residual = bd_residual(rho.mat(), rho.dims(), basis.unitary());
  v.member = v.residual <= kExactResidualTol;
  if (v.member) v.witness = basis;
  return v;
}

ClassVerdict is_zero_discord(const DensityMatrix& rho, const Budget& budget, std::uint64_t seed) {
  const Dims dims = rho.dims();
  if (dims.a > 4) {
    throw Error(ErrorKind::UnsupportedDims, "zero-discord search supports d_A <= 4");
  }
  // The eigenbasis of rho_A is the witness whenever its spectrum is simple.
  const Eigensystem reduced = eig_hermitian(partial_trace(rho.mat(), dims, Subsystem::A));
  const std::vector<ComplexMatrix> seeds{reduced.vectors};
  const ComplexMatrix& m = rho.mat();
  auto objective = [&](const ComplexMatrix& u) { return bd_residual(m, dims, u); };
  const UnitarySearchResult found =
      minimize_over_unitaries(dims.a, objective, seeds, budget, Rng(seed), 0.0, 1e-14);

  ClassVerdict v;
  v.family = Family::ZeroDiscord;
  v.residual = std::max(found.value, 0.0);
  v.member = v.residual <= kOptimizedResidualTol;
  v.converged = found.converged || v.member;
  if (v.member) v.witness = BasisSpec(found.unitary);
  return v;
}

ComplexMatrix partial_transpose_b(const ComplexMatrix& rho, Dims dims) {
  const int da = dims.a;
  const int db = dims.b;
  ComplexMatrix out(rho.rows(), rho.cols());
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = rho.block(i * db, j * db, db, db).transpose();
    }
  }
  return out;
}

double ppt_min_eigenvalue(const DensityMatrix& rho) {
  return eig_hermitian(partial_transpose_b(rho.mat(), rho.dims())).values.minCoeff();
}

ClassVerdict ppt_verdict(const DensityMatrix& rho) {
  const Dims d = rho.dims();
  ClassVerdict v;
  v.family = Family::Separable;
  const double lambda_min = ppt_min_eigenvalue(rho);
  v.residual = std::max(0.0, -lambda_min);
  v.member = lambda_min >= -kPptTol;
  const bool exact = (d.a == 2 && (d.b == 2 || d.b == 3)) || (d.b == 2 && d.a == 3) ||
                     d.a == 1 || d.b == 1;
  v.certified = exact;
  return v;
}

ClassVerdict is_separable_2x2(const DensityMatrix& rho) {
  const Dims d = rho.dims();
  if (!(d.a == 2 && (d.b == 2 || d.b == 3))) {
    throw Error(ErrorKind::UnsupportedDims,
                "PPT separability is exact only for 2x2 and 2x3; got " + std::to_string(d.a) +
                    "x" + std::to_string(d.b));
  }
  return ppt_verdict(rho);
}

}  // namespace qkit

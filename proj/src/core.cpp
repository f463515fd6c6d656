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

#include "qkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qkit/rng.hpp"

namespace qkit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NonPSD: return "NonPSD";
    case ErrorKind::BadTrace: return "BadTrace";
    case ErrorKind::BadNorm: return "BadNorm";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::BadDistribution: return "BadDistribution";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnsupportedDims: return "UnsupportedDims";
    case ErrorKind::GeneratorNotDiagonal: return "GeneratorNotDiagonal";
    case ErrorKind::BadM: return "BadM";
    case ErrorKind::NotCPTP: return "NotCPTP";
    case ErrorKind::PrereqFailed: return "PrereqFailed";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

void check_dims(Dims dims, Eigen::Index rows, Eigen::Index cols) {
  if (dims.a < 1 || dims.b < 1) {
    throw Error(ErrorKind::DimensionMismatch, "subsystem dimensions must be >= 1");
  }
  if (dims.total() > kMaxTotalDim) {
    throw Error(ErrorKind::UnsupportedDims,
                "d_A*d_B = " + std::to_string(dims.total()) + " exceeds the cap of " +
                    std::to_string(kMaxTotalDim));
  }
  if (rows != dims.total() || cols != dims.total()) {
    std::ostringstream os;
    os << "matrix is " << rows << "x" << cols << " but dims (" << dims.a << ", " << dims.b
       << ") require " << dims.total() << "x" << dims.total();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  if (u.size() == 0) return 0.0;
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(Dims dims, ComplexMatrix mat) : dims_(dims), mat_(std::move(mat)) {
  check_dims(dims_, mat_.rows(), mat_.cols());
  const double herm = hermiticity_error(mat_);
  if (herm > kHermitianTol) {
    throw Error(ErrorKind::NonHermitian,
                "density matrix is not Hermitian: max |m_ij - conj(m_ji)| = " + num(herm));
  }
  const double tr = mat_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw Error(ErrorKind::BadTrace, "density matrix trace is " + num(tr) +
                                         ", expected 1 within " + num(kTraceTol));
  }
  const double min_eig = eig_hermitian(mat_).values.minCoeff();
  if (min_eig < -kPsdTol) {
    throw Error(ErrorKind::NonPSD,
                "density matrix has negative eigenvalue " + num(min_eig));
  }
}

DensityMatrix::DensityMatrix(Trusted, Dims dims, ComplexMatrix mat)
    : dims_(dims), mat_(std::move(mat)) {
  check_dims(dims_, mat_.rows(), mat_.cols());
}

DensityMatrix DensityMatrix::trusted(Dims dims, ComplexMatrix mat) {
  // Symmetrize away roundoff so downstream Hermitian solvers see exact symmetry.
  ComplexMatrix herm = 0.5 * (mat + mat.adjoint());
  return DensityMatrix(Trusted{}, dims, std::move(herm));
}

double DensityMatrix::purity() const { return (mat_ * mat_).trace().real(); }

Observable::Observable(ComplexMatrix mat) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "observable must be square");
  }
  const double herm = hermiticity_error(mat_);
  if (herm > kHermitianTol) {
    throw Error(ErrorKind::NonHermitian, "observable is not Hermitian: deviation " + num(herm));
  }
}

PureState::PureState(Dims dims, ComplexVector amplitudes)
    : dims_(dims), amplitudes_(std::move(amplitudes)) {
  if (dims_.a < 1 || dims_.b < 1 || amplitudes_.size() != dims_.total()) {
    throw Error(ErrorKind::DimensionMismatch, "amplitude vector length does not match dims");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw Error(ErrorKind::BadNorm, "pure state norm is " + num(norm));
  }
}

DensityMatrix PureState::density() const {
  return DensityMatrix::trusted(dims_, amplitudes_ * amplitudes_.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(Dims{a.dim(), b.dim()}, kron(a.mat(), b.mat()));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem keep) {
  check_dims(dims, m.rows(), m.cols());
  const int da = dims.a;
  const int db = dims.b;
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i) {
      for (int j = 0; j < da; ++j) {
        out(i, j) = m.block(i * db, j * db, db, db).trace();
      }
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int i = 0; i < da; ++i) out += m.block(i * db, i * db, db, db);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  ComplexMatrix red = partial_trace(rho.mat(), rho.dims(), keep);
  const int d = static_cast<int>(red.rows());
  return DensityMatrix::trusted(Dims{d, 1}, std::move(red));
}

Eigensystem eig_hermitian(const ComplexMatrix& m) {
  const double herm = hermiticity_error(m);
  if (herm > kHermitianTol) {
    throw Error(ErrorKind::NonHermitian, "eig_hermitian: deviation " + num(herm));
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  const Eigen::Index n = m.rows();
  Eigensystem out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  const Eigensystem es = eig_hermitian(m);
  RealVector roots(es.values.size());
  // Roundoff-level eigenvalues are zeros; sqrt would inflate 1e-16 to 1e-8.
  const double floor = 64 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, es.values.cwiseAbs().maxCoeff()) * es.values.size();
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const double lambda = es.values(k);
    if (lambda < -kPsdTol) {
      throw Error(ErrorKind::NonPSD, "sqrt_psd: eigenvalue " + num(lambda));
    }
    roots(k) = lambda <= floor ? 0.0 : std::sqrt(lambda);
  }
  return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

ComplexMatrix matrix_sqrt_psd(const DensityMatrix& rho) { return sqrt_psd(rho.mat()); }

ComplexMatrix exp_i_hermitian(const ComplexMatrix& g) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(g);
  const auto& lambda = solver.eigenvalues();
  ComplexVector phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) phases(k) = std::polar(1.0, lambda(k));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

int numerical_rank(const DensityMatrix& rho, double tol) {
  const Eigensystem es = eig_hermitian(rho.mat());
  return static_cast<int>((es.values.array() > tol).count());
}

PureState purify(const DensityMatrix& rho, double rank_tol) {
  const Eigensystem es = eig_hermitian(rho.mat());
  int rank = static_cast<int>((es.values.array() > rank_tol).count());
  rank = std::max(rank, 1);
  const int d = rho.dim();
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(d) * rank);
  for (int k = 0; k < rank; ++k) {
    const double w = std::sqrt(std::max(es.values(k), 0.0));
    for (int i = 0; i < d; ++i) psi(i * rank + k) += w * es.vectors(i, k);
  }
  psi /= psi.norm();
  return PureState(Dims{d, rank}, std::move(psi));
}

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

ComplexVector basis_ket(int dim, int index) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  ComplexMatrix z(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) z(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Phase fix makes the distribution Haar rather than QR-biased.
  for (int k = 0; k < dim; ++k) {
    const Complex rkk = r(k, k);
    const double mag = std::abs(rkk);
    if (mag > 0.0) q.col(k) *= rkk / mag;
  }
  return q;
}

DensityMatrix random_state(Dims dims, int rank, Rng& rng) {
  const int d = dims.total();
  if (rank < 1 || rank > d) {
    throw Error(ErrorKind::BadRank, "rank " + std::to_string(rank) + " outside [1, " +
                                        std::to_string(d) + "]");
  }
  ComplexMatrix g(d, rank);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::trusted(dims, std::move(rho));
}

PureState random_pure(Dims dims, Rng& rng) {
  ComplexVector v(dims.total());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  v /= v.norm();
  return PureState(dims, std::move(v));
}

ComplexMatrix random_hermitian(int dim, Rng& rng) {
  ComplexMatrix z(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) z(i, j) = rng.complex_normal();
  }
  return 0.5 * (z + z.adjoint());
}

std::vector<double> random_distribution(int n, Rng& rng) {
  std::vector<double> p(n);
  double total = 0.0;
  for (double& x : p) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    x = -std::log(u);
    total += x;
  }
  for (double& x : p) x /= total;
  return p;
}

}  // namespace qkit

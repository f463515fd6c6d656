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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qkit {

class Rng;

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr int kMaxTotalDim = 64;

enum class ErrorKind {
  NonHermitian,
  NonPSD,
  BadTrace,
  BadNorm,
  NotUnitary,
  BadRank,
  BadDistribution,
  DimensionMismatch,
  UnsupportedDims,
  GeneratorNotDiagonal,
  BadM,
  NotCPTP,
  PrereqFailed,
  Parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Bipartite dimension split (d_A, d_B). Single systems use b = 1.
struct Dims {
  int a = 1;
  int b = 1;
  int total() const { return a * b; }
  bool operator==(const Dims&) const = default;
};

enum class Subsystem { A, B };

/// Hermitian, unit-trace, positive semidefinite matrix over a declared split.
/// Construction validates every invariant; instances are immutable.
class DensityMatrix {
 public:
  DensityMatrix(Dims dims, ComplexMatrix mat);

  /// Skips the spectral check. Callers must guarantee validity by
  /// construction (tensor products, partial traces, unitary conjugation).
  static DensityMatrix trusted(Dims dims, ComplexMatrix mat);

  const Dims& dims() const { return dims_; }
  const ComplexMatrix& mat() const { return mat_; }
  int dim() const { return dims_.total(); }
  double purity() const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, Dims dims, ComplexMatrix mat);

  Dims dims_;
  ComplexMatrix mat_;
};

class Observable {
 public:
  explicit Observable(ComplexMatrix mat);
  int dim() const { return static_cast<int>(mat_.rows()); }
  const ComplexMatrix& mat() const { return mat_; }

 private:
  ComplexMatrix mat_;
};

class PureState {
 public:
  PureState(Dims dims, ComplexVector amplitudes);
  const Dims& dims() const { return dims_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  DensityMatrix density() const;

 private:
  Dims dims_;
  ComplexVector amplitudes_;
};

struct Eigensystem {
  RealVector values;     // descending
  ComplexMatrix vectors; // columns, unitary
};

// Checks. Each returns the measured deviation.
double hermiticity_error(const ComplexMatrix& m);
double unitarity_error(const ComplexMatrix& u);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem keep);
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// Throws NonHermitian if m is not Hermitian within kHermitianTol.
Eigensystem eig_hermitian(const ComplexMatrix& m);

/// Square root of a PSD matrix; eigenvalues in [-kPsdTol, 0) are clamped.
ComplexMatrix sqrt_psd(const ComplexMatrix& m);
ComplexMatrix matrix_sqrt_psd(const DensityMatrix& rho);

/// exp(iG) for Hermitian G.
ComplexMatrix exp_i_hermitian(const ComplexMatrix& g);

/// Purification on dims (d_A·d_B, rank); tracing out B recovers rho.
PureState purify(const DensityMatrix& rho, double rank_tol = 1e-12);

int numerical_rank(const DensityMatrix& rho, double tol = 1e-12);

ComplexMatrix identity(int dim);
ComplexMatrix projector(const ComplexVector& v);
ComplexVector basis_ket(int dim, int index);

ComplexMatrix random_unitary(int dim, Rng& rng);
DensityMatrix random_state(Dims dims, int rank, Rng& rng);
PureState random_pure(Dims dims, Rng& rng);
/// Random Hermitian matrix with i.i.d. complex Gaussian entries (GUE-like).
ComplexMatrix random_hermitian(int dim, Rng& rng);
/// Random probability vector, uniform on the simplex.
std::vector<double> random_distribution(int n, Rng& rng);

}  // namespace qkit

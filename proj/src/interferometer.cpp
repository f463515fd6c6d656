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

#include "qkit/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qkit/rng.hpp"

namespace qkit {

PhaseEnsemble::PhaseEnsemble(std::vector<RealVector> phases, std::vector<double> priors)
    : phases_(std::move(phases)), priors_(std::move(priors)) {
  if (phases_.empty() || phases_.size() != priors_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "ensemble needs one prior per phase vector");
  }
  check_distribution(priors_, "phase priors");
  const auto d = phases_.front().size();
  for (const RealVector& phi : phases_) {
    if (phi.size() != d || d == 0) {
      throw Error(ErrorKind::DimensionMismatch, "phase vectors must share a length >= 1");
    }
    for (Eigen::Index j = 0; j < phi.size(); ++j) {
      if (!(phi(j) >= 0.0 && phi(j) < 2.0 * M_PI)) {
        throw Error(ErrorKind::BadDistribution, "phase entries must lie in [0, 2*pi)");
      }
    }
  }
}

PhaseEnsemble PhaseEnsemble::uniform_grid(int dim, int levels) {
  int count = 1;
  for (int j = 1; j < dim; ++j) count *= levels;
  std::vector<RealVector> phases;
  for (int idx = 0; idx < count; ++idx) {
    RealVector phi = RealVector::Zero(dim);
    int rest = idx;
    for (int j = dim - 1; j >= 1; --j) {
      phi(j) = 2.0 * M_PI * (rest % levels) / levels;
      rest /= levels;
    }
    phases.push_back(std::move(phi));
  }
  std::vector<double> priors(count, 1.0 / count);
  return PhaseEnsemble(std::move(phases), std::move(priors));
}

Measurement::Measurement(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorKind::DimensionMismatch, "POVM has no elements");
  const auto n = elements_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const ComplexMatrix& e : elements_) {
    if (e.rows() != n || e.cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "POVM elements differ in size");
    }
    if (eig_hermitian(e).values.minCoeff() < -kPsdTol) {
      throw Error(ErrorKind::NonPSD, "POVM element is not positive semidefinite");
    }
    sum += e;
  }
  const double dev = (sum - identity(static_cast<int>(n))).cwiseAbs().maxCoeff();
  if (dev > 1e-9) {
    throw Error(ErrorKind::BadDistribution,
                "POVM elements do not sum to the identity (deviation " + std::to_string(dev) + ")");
  }
}

Measurement Measurement::projective(const ComplexMatrix& unitary) {
  std::vector<ComplexMatrix> el;
  for (Eigen::Index j = 0; j < unitary.cols(); ++j) el.push_back(projector(unitary.col(j)));
  return Measurement(std::move(el));
}

Measurement Measurement::local_a(const ComplexMatrix& unitary_a, int dim_b) {
  std::vector<ComplexMatrix> el;
  for (Eigen::Index j = 0; j < unitary_a.cols(); ++j) {
    el.push_back(kron(projector(unitary_a.col(j)), identity(dim_b)));
  }
  return Measurement(std::move(el));
}

Measurement random_povm(int dim, int outcomes, Rng& rng) {
  std::vector<ComplexMatrix> raw;
  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  for (int j = 0; j < outcomes; ++j) {
    ComplexMatrix g(dim, dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) g(r, c) = rng.complex_normal();
    }
    raw.push_back(g * g.adjoint());
    total += raw.back();
  }
  const Eigensystem es = eig_hermitian(0.5 * (total + total.adjoint()));
  const ComplexMatrix inv_sqrt =
      es.vectors * es.values.array().rsqrt().matrix().asDiagonal() * es.vectors.adjoint();
  for (ComplexMatrix& m : raw) {
    m = inv_sqrt * m * inv_sqrt;
    m = 0.5 * (m + m.adjoint());
  }
  return Measurement(std::move(raw));
}

ComplexMatrix encoding_unitary(const BasisSpec& basis, const RealVector& phi, int dim_b) {
  if (phi.size() != basis.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "phase vector length must equal d_A");
  }
  ComplexVector phases(phi.size());
  for (Eigen::Index j = 0; j < phi.size(); ++j) phases(j) = std::polar(1.0, -phi(j));
  const ComplexMatrix ua = basis.unitary() * phases.asDiagonal() * basis.unitary().adjoint();
  return kron(ua, identity(dim_b));
}

DensityMatrix encode(const DensityMatrix& rho, const BasisSpec& basis, const RealVector& phi) {
  if (basis.dim() != rho.dims().a) {
    throw Error(ErrorKind::DimensionMismatch, "basis dimension must equal d_A");
  }
  const ComplexMatrix u = encoding_unitary(basis, phi, rho.dims().b);
  return DensityMatrix::trusted(rho.dims(), u * rho.mat() * u.adjoint());
}

namespace {

std::vector<double> born(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& elements) {
  std::vector<double> p(elements.size());
  double total = 0.0;
  for (std::size_t j = 0; j < elements.size(); ++j) {
    p[j] = std::clamp((elements[j] * rho).trace().real(), 0.0, 1.0);
    total += p[j];
  }
  if (std::abs(total - 1.0) > 1e-12 && total > 0.0) {
    for (double& x : p) x /= total;
  }
  return p;
}

// p(x|k) = <v_x| rho_k |v_x> for the columns of v.
std::vector<std::vector<double>> projective_rows(const std::vector<ComplexMatrix>& encoded,
                                                 const ComplexMatrix& v) {
  std::vector<std::vector<double>> rows;
  rows.reserve(encoded.size());
  for (const ComplexMatrix& rho : encoded) {
    const ComplexMatrix rv = rho * v;
    std::vector<double> row(v.cols());
    double total = 0.0;
    for (Eigen::Index x = 0; x < v.cols(); ++x) {
      row[x] = std::max(0.0, v.col(x).dot(rv.col(x)).real());
      total += row[x];
    }
    for (double& r : row) r /= total;
    rows.push_back(std::move(row));
  }
  return rows;
}

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

}  // namespace

std::vector<double> outcome_dist(const DensityMatrix& rho_prime, const Measurement& m) {
  if (m.dim() != rho_prime.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "measurement and state dimensions differ");
  }
  return born(rho_prime.mat(), m.elements());
}

std::vector<std::vector<double>> conditional_dists(const DensityMatrix& rho,
                                                   const BasisSpec& basis,
                                                   const PhaseEnsemble& ensemble,
                                                   const Measurement& m) {
  if (ensemble.dim() != rho.dims().a) {
    throw Error(ErrorKind::DimensionMismatch, "phase vectors must have length d_A");
  }
  std::vector<std::vector<double>> rows;
  for (const RealVector& phi : ensemble.phases()) {
    rows.push_back(outcome_dist(encode(rho, basis, phi), m));
  }
  return rows;
}

double mutual_info_from(const std::vector<double>& priors,
                        const std::vector<std::vector<double>>& conditionals) {
  const std::size_t outcomes = conditionals.front().size();
  std::vector<double> marginal(outcomes, 0.0);
  for (std::size_t k = 0; k < priors.size(); ++k) {
    for (std::size_t x = 0; x < outcomes; ++x) marginal[x] += priors[k] * conditionals[k][x];
  }
  // Sum of prior-weighted KL divergences; equals H(X) - H(X|Phi) but keeps
  // full relative precision when the rows nearly coincide.
  double info = 0.0;
  for (std::size_t k = 0; k < priors.size(); ++k) {
    if (priors[k] <= 0.0) continue;
    for (std::size_t x = 0; x < outcomes; ++x) {
      const double p = conditionals[k][x];
      if (p > 0.0 && marginal[x] > 0.0) info += priors[k] * p * std::log2(p / marginal[x]);
    }
  }
  return std::max(info, 0.0);
}

double mutual_info(const DensityMatrix& rho, const BasisSpec& basis,
                   const PhaseEnsemble& ensemble, const Measurement& m) {
  return mutual_info_from(ensemble.priors(), conditional_dists(rho, basis, ensemble, m));
}

BestMeasurement best_measurement(const DensityMatrix& rho, const BasisSpec& basis,
                                 const PhaseEnsemble& ensemble, const Budget& budget,
                                 std::uint64_t seed, MeasurementScope scope) {
  const Dims dims = rho.dims();
  if (dims.a > 4 || dims.b > 4) {
    throw Error(ErrorKind::UnsupportedDims, "best_measurement supports dims up to (4, 4)");
  }
  if (ensemble.dim() != dims.a) {
    throw Error(ErrorKind::DimensionMismatch, "phase vectors must have length d_A");
  }
  std::vector<ComplexMatrix> encoded;
  for (const RealVector& phi : ensemble.phases()) {
    const ComplexMatrix u = encoding_unitary(basis, phi, dims.b);
    ComplexMatrix e = u * rho.mat() * u.adjoint();
    if (scope == MeasurementScope::LocalA) e = partial_trace(e, dims, Subsystem::A);
    encoded.push_back(0.5 * (e + e.adjoint()));
  }
  const int n = static_cast<int>(encoded.front().rows());
  const std::vector<double>& priors = ensemble.priors();

  // Helstrom-style seeds: eigenbases of differences of encoded states.
  std::vector<ComplexMatrix> seeds;
  if (encoded.size() >= 2) seeds.push_back(eig_hermitian(encoded[0] - encoded[1]).vectors);
  if (encoded.size() >= 3) {
    seeds.push_back(eig_hermitian(encoded[0] - encoded[encoded.size() - 1]).vectors);
  }
  seeds.push_back(eig_hermitian(encoded[0]).vectors);

  auto objective = [&](const ComplexMatrix& v) {
    return -mutual_info_from(priors, projective_rows(encoded, v));
  };
  const double ceiling = std::min(std::log2(static_cast<double>(n)), entropy_bits(priors));
  const UnitarySearchResult found =
      minimize_over_unitaries(n, objective, seeds, budget, Rng(seed), -ceiling, 1e-12);

  ComplexMatrix v = found.unitary;
  Measurement meas = scope == MeasurementScope::LocalA ? Measurement::local_a(v, dims.b)
                                                        : Measurement::projective(v);
  const double value = mutual_info(rho, basis, ensemble, meas);
  return BestMeasurement{std::move(meas), value, found.converged};
}

}  // namespace qkit

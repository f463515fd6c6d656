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

#include "qkit/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qkit/measures.hpp"
#include "qkit/rng.hpp"

namespace qkit {

namespace {

constexpr double kBranchFloor = 1e-12;

const BasisSpec& require_basis(const std::optional<BasisSpec>& basis, const char* what) {
  if (!basis) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " requires a basis");
  }
  return *basis;
}

bool in_family(const DensityMatrix& rho, Family family, const BasisSpec* basis,
               std::uint64_t seed) {
  switch (family) {
    case Family::Incoherent: return is_incoherent(rho, *basis).member;
    case Family::ZeroBDDiscord: return is_zero_bd_discord(rho, *basis).member;
    case Family::ZeroDiscord: return is_zero_discord(rho, Budget{8, 1500, 1e-12}, seed).member;
    case Family::Separable: return is_separable_2x2(rho).member;
  }
  return false;
}

DensityMatrix random_b_state(int db, Rng& rng, bool pure) {
  return pure ? random_pure(Dims{db, 1}, rng).density()
              : random_state(Dims{db, 1}, rng.uniform_int(1, db), rng);
}

std::vector<double> vertex(int n, int index) {
  std::vector<double> p(n, 0.0);
  p[index] = 1.0;
  return p;
}

}  // namespace

KrausChannel::KrausChannel(Dims dims, std::vector<ComplexMatrix> kraus)
    : dims_(dims), kraus_(std::move(kraus)) {
  const int n = dims_.total();
  if (kraus_.empty()) throw Error(ErrorKind::NotCPTP, "channel has no Kraus operators");
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const ComplexMatrix& k : kraus_) {
    if (k.rows() != n || k.cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "Kraus operator size does not match dims");
    }
    sum += k.adjoint() * k;
  }
  const double dev = (sum - qkit::identity(n)).cwiseAbs().maxCoeff();
  if (dev > 1e-9) {
    throw Error(ErrorKind::NotCPTP,
                "sum of K^dagger K deviates from identity by " + std::to_string(dev));
  }
}

KrausChannel KrausChannel::identity(Dims dims) {
  return KrausChannel(dims, {qkit::identity(dims.total())});
}

KrausChannel KrausChannel::unitary(Dims dims, const ComplexMatrix& u) {
  return KrausChannel(dims, {u});
}

KrausChannel KrausChannel::dephasing(Dims dims, const BasisSpec& basis) {
  std::vector<ComplexMatrix> k;
  for (int j = 0; j < basis.dim(); ++j) {
    k.push_back(kron(projector(basis.ket(j)), qkit::identity(dims.b)));
  }
  return KrausChannel(dims, std::move(k));
}

KrausChannel KrausChannel::partial_dephasing(Dims dims, const BasisSpec& basis, double p) {
  std::vector<ComplexMatrix> k{std::sqrt(1.0 - p) * qkit::identity(dims.total())};
  for (int j = 0; j < basis.dim(); ++j) {
    k.push_back(std::sqrt(p) * kron(projector(basis.ket(j)), qkit::identity(dims.b)));
  }
  return KrausChannel(dims, std::move(k));
}

KrausChannel KrausChannel::depolarizing(Dims dims, double p) {
  // Kraus form: sqrt(1 - p) I plus sqrt(p / d) |i><j| for all i, j.
  const int d = dims.total();
  std::vector<ComplexMatrix> k{std::sqrt(1.0 - p) * qkit::identity(d)};
  const double w = std::sqrt(p / d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(i, j) = w;
      k.push_back(std::move(e));
    }
  }
  return KrausChannel(dims, std::move(k));
}

KrausChannel KrausChannel::local_b(Dims dims, const ComplexMatrix& v) {
  return KrausChannel(dims, {kron(qkit::identity(dims.a), v)});
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  if (!(ch.dims() == rho.dims())) {
    throw Error(ErrorKind::DimensionMismatch, "channel and state dims differ");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const ComplexMatrix& k : ch.kraus()) out += k * rho.mat() * k.adjoint();
  return DensityMatrix(rho.dims(), 0.5 * (out + out.adjoint()));
}

DensityMatrix dephase_A(const DensityMatrix& rho, const BasisSpec& basis) {
  if (basis.dim() != rho.dims().a) {
    throw Error(ErrorKind::DimensionMismatch, "basis must act on A");
  }
  const int db = rho.dims().b;
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (int j = 0; j < basis.dim(); ++j) {
    const ComplexMatrix p = kron(projector(basis.ket(j)), qkit::identity(db));
    out += p * rho.mat() * p;
  }
  return DensityMatrix::trusted(rho.dims(), std::move(out));
}

DensityMatrix sample_classical_state(Family family, Dims dims, const BasisSpec* basis, int trial,
                                     Rng& rng) {
  const bool extreme = trial % 3 == 0;
  const int da = dims.a;
  const int db = dims.b;
  switch (family) {
    case Family::Incoherent: {
      if (db != 1) throw Error(ErrorKind::DimensionMismatch, "Incoherent family needs d_B = 1");
      const auto p = extreme ? vertex(da, rng.uniform_int(0, da - 1)) : random_distribution(da, rng);
      return make_incoherent(p, *basis);
    }
    case Family::ZeroBDDiscord:
    case Family::ZeroDiscord: {
      const BasisSpec local =
          family == Family::ZeroBDDiscord ? *basis : BasisSpec(random_unitary(da, rng));
      const auto p = extreme ? vertex(da, rng.uniform_int(0, da - 1)) : random_distribution(da, rng);
      std::vector<DensityMatrix> b_states;
      for (int j = 0; j < da; ++j) b_states.push_back(random_b_state(db, rng, extreme));
      return make_cq(p, local, b_states);
    }
    case Family::Separable: {
      const int terms = extreme ? 1 : rng.uniform_int(2, 6);
      const auto p = random_distribution(terms, rng);
      std::vector<DensityMatrix> as;
      std::vector<DensityMatrix> bs;
      for (int k = 0; k < terms; ++k) {
        as.push_back(random_pure(Dims{da, 1}, rng).density());
        bs.push_back(random_pure(Dims{db, 1}, rng).density());
      }
      return make_separable(p, as, bs);
    }
  }
  throw Error(ErrorKind::DimensionMismatch, "unknown family");
}

ClassicalityReport is_classical_operation(const KrausChannel& ch, Family family,
                                          const std::optional<BasisSpec>& basis, int trials,
                                          std::uint64_t seed) {
  const BasisSpec* b = nullptr;
  if (family == Family::Incoherent || family == Family::ZeroBDDiscord) {
    b = &require_basis(basis, "this family");
  }
  const Rng root(seed);
  ClassicalityReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Rng rng = root.split(static_cast<std::uint64_t>(t));
    const DensityMatrix sigma = sample_classical_state(family, ch.dims(), b, t, rng);
    if (!in_family(apply_channel(ch, sigma), family, b, rng.next_u64())) ++report.plain_failures;
    for (const ComplexMatrix& k : ch.kraus()) {
      ComplexMatrix branch = k * sigma.mat() * k.adjoint();
      const double tr = branch.trace().real();
      if (tr < kBranchFloor) continue;
      const DensityMatrix normalized = DensityMatrix::trusted(ch.dims(), branch / tr);
      if (!in_family(normalized, family, b, rng.next_u64())) {
        ++report.branch_failures;
        break;
      }
    }
  }
  report.plain = report.plain_failures == 0;
  report.post_selected = report.branch_failures == 0;
  return report;
}

const char* to_string(MeasureId id) {
  switch (id) {
    case MeasureId::Coherence: return "coherence";
    case MeasureId::BDDiscord: return "bd_discord";
    case MeasureId::Discord: return "discord";
    case MeasureId::Entanglement: return "entanglement";
  }
  return "unknown";
}

Family family_of(MeasureId id) {
  switch (id) {
    case MeasureId::Coherence: return Family::Incoherent;
    case MeasureId::BDDiscord: return Family::ZeroBDDiscord;
    case MeasureId::Discord: return Family::ZeroDiscord;
    case MeasureId::Entanglement: return Family::Separable;
  }
  return Family::Incoherent;
}

double monotonicity_slack(MeasureId id) {
  switch (id) {
    case MeasureId::Coherence:
    case MeasureId::BDDiscord: return 1e-9;
    case MeasureId::Discord: return 1e-5;
    case MeasureId::Entanglement: return 5e-3;
  }
  return 0.0;
}

namespace {

double evaluate(MeasureId id, const DensityMatrix& rho, const std::optional<BasisSpec>& basis,
                std::uint64_t seed) {
  switch (id) {
    case MeasureId::Coherence:
      return coherence_skew(rho, require_basis(basis, "coherence")).value;
    case MeasureId::BDDiscord:
      return bd_discord_skew(rho, require_basis(basis, "bd_discord")).value;
    case MeasureId::Discord: return discord_skew(rho, Budget{}, seed).value;
    case MeasureId::Entanglement:
      return entanglement_skew(rho, std::nullopt, convex_roof_budget(), seed).value;
  }
  return 0.0;
}

void check_prerequisite(const KrausChannel& ch, MeasureId measure,
                        const std::optional<BasisSpec>& basis, int trials, std::uint64_t seed) {
  const ClassicalityReport cr =
      is_classical_operation(ch, family_of(measure), basis, std::min(trials, 50), seed);
  if (!cr.plain) {
    throw Error(ErrorKind::PrereqFailed, std::string("channel is not a classical operation for ") +
                                             to_string(family_of(measure)));
  }
}

DensityMatrix random_input(Dims dims, Rng& rng) {
  return random_state(dims, rng.uniform_int(1, dims.total()), rng);
}

}  // namespace

MonotonicityReport monotonicity_check(const KrausChannel& ch, MeasureId measure,
                                      const std::optional<BasisSpec>& basis, int trials,
                                      std::uint64_t seed) {
  const Rng root(seed);
  check_prerequisite(ch, measure, basis, trials, root.split(0).seed());
  MonotonicityReport report;
  report.trials = trials;
  report.slack = monotonicity_slack(measure);
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng rng = root.split(static_cast<std::uint64_t>(t) + 1);
    const DensityMatrix rho = random_input(ch.dims(), rng);
    const std::uint64_t s = rng.next_u64();
    const double before = evaluate(measure, rho, basis, s);
    const double after = evaluate(measure, apply_channel(ch, rho), basis, s);
    const double increase = after - before;
    report.max_violation = std::max(report.max_violation, increase);
    if (increase > report.slack) ++report.violations;
  }
  return report;
}

MonotonicityReport selective_monotonicity_check(const KrausChannel& ch, MeasureId measure,
                                                const std::optional<BasisSpec>& basis, int trials,
                                                std::uint64_t seed) {
  const Rng root(seed);
  check_prerequisite(ch, measure, basis, trials, root.split(0).seed());
  MonotonicityReport report;
  report.trials = trials;
  report.slack = monotonicity_slack(measure);
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng rng = root.split(static_cast<std::uint64_t>(t) + 1);
    const DensityMatrix rho = random_input(ch.dims(), rng);
    const std::uint64_t s = rng.next_u64();
    const double before = evaluate(measure, rho, basis, s);
    double averaged = 0.0;
    for (const ComplexMatrix& k : ch.kraus()) {
      const ComplexMatrix branch = k * rho.mat() * k.adjoint();
      const double p = branch.trace().real();
      if (p < kBranchFloor) continue;
      averaged += p * evaluate(measure, DensityMatrix::trusted(ch.dims(), branch / p), basis, s);
    }
    const double increase = averaged - before;
    report.max_violation = std::max(report.max_violation, increase);
    if (increase > report.slack) ++report.violations;
  }
  return report;
}

}  // namespace qkit

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

#include "qkit/adversary.hpp"

#include "qkit/parallel.hpp"
#include "qkit/rng.hpp"

namespace qkit {

const char* to_string(AdversaryKind kind) {
  return kind == AdversaryKind::Weak ? "weak" : "strong";
}

GameValue weak_game_mi(const DensityMatrix& rho, const PhaseEnsemble& ensemble,
                       const WeakGameBudget& budget, std::uint64_t seed) {
  const Dims dims = rho.dims();
  if (dims.a > 4 || dims.b > 4) {
    throw Error(ErrorKind::UnsupportedDims, "weak_game_mi supports dims up to (4, 4)");
  }
  const Rng rng(seed);
  const std::uint64_t inner_seed = rng.split(1).next_u64();

  // Zero-discord witness and the rho_A eigenbasis are the natural adversary moves.
  std::vector<ComplexMatrix> seeds;
  const ClassVerdict zd = is_zero_discord(rho, Budget{4, 1000, 1e-12}, rng.split(2).seed());
  if (zd.witness) seeds.push_back(zd.witness->unitary());
  seeds.push_back(eig_hermitian(partial_trace(rho.mat(), dims, Subsystem::A)).vectors);

  auto inner = [&](const ComplexMatrix& u) {
    return best_measurement(rho, BasisSpec(u), ensemble, budget.inner, inner_seed).value;
  };
  const UnitarySearchResult outer =
      minimize_over_unitaries(dims.a, inner, seeds, budget.outer, rng.split(3), 0.0, 1e-12);

  GameValue out;
  out.basis = BasisSpec(outer.unitary);
  BestMeasurement reply = best_measurement(rho, *out.basis, ensemble, budget.inner, inner_seed);
  out.value = reply.value;
  out.prober = std::move(reply.measurement);
  out.converged = outer.converged;
  return out;
}

GameValue weak_game_skew(const DensityMatrix& rho, const Budget& budget, std::uint64_t seed) {
  MeasureValue mv = discord_skew(rho, budget, seed);
  GameValue out;
  out.value = mv.value;
  out.basis = std::move(mv.basis);
  out.converged = mv.converged;
  return out;
}

GameValue strong_game_skew(const DensityMatrix& rho, const AdversaryModel& model,
                           std::uint64_t seed) {
  MeasureValue mv = entanglement_skew(rho, model.m, model.budget, seed);
  GameValue out;
  out.value = mv.value;
  out.decomposition = std::move(mv.decomposition);
  out.element_bases = std::move(mv.element_bases);
  out.converged = mv.converged;
  return out;
}

DensityMatrix apply_adversary_rotation(const DensityMatrix& rho, const BasisSpec& e_basis) {
  if (e_basis.dim() != rho.dims().a) {
    throw Error(ErrorKind::DimensionMismatch, "adversary basis must act on A");
  }
  // U_e maps |j^e> to |j>, i.e. the adjoint of the basis matrix.
  const ComplexMatrix w = kron(e_basis.unitary().adjoint(), identity(rho.dims().b));
  return DensityMatrix::trusted(rho.dims(), w * rho.mat() * w.adjoint());
}

namespace {

template <class F>
TableCell cell(F&& compute) {
  TableCell c;
  try {
    const MeasureValue mv = compute();
    c.value = mv.value;
    c.converged = mv.converged;
  } catch (const Error& e) {
    c.value = std::numeric_limits<double>::quiet_NaN();
    c.converged = false;
    c.error = e.what();
  }
  return c;
}

}  // namespace

std::vector<TableRow> scenario_table(const std::vector<NamedState>& states,
                                     const TableBudget& budget, std::uint64_t seed) {
  std::vector<TableRow> rows(states.size());
  const Rng rng(seed);
  parallel_for(static_cast<int>(states.size()), [&](int i) {
    const DensityMatrix& rho = states[i].state;
    const std::uint64_t row_seed = rng.split(static_cast<std::uint64_t>(i)).seed();
    const BasisSpec comp = BasisSpec::computational(rho.dims().a);
    TableRow& row = rows[i];
    row.label = states[i].label;
    row.coherence = cell([&] { return coherence_skew(rho, comp); });
    row.bd_discord = cell([&] { return bd_discord_skew(rho, comp); });
    row.discord = cell([&] { return discord_skew(rho, budget.basis, row_seed); });
    row.entanglement =
        cell([&] { return entanglement_skew(rho, std::nullopt, budget.roof, row_seed); });

    row.incoherent = is_incoherent(partial_trace(rho, Subsystem::A), comp).member;
    row.zero_bd_discord = is_zero_bd_discord(rho, comp).member;
    try {
      row.zero_discord = is_zero_discord(rho, budget.basis, row_seed).member;
    } catch (const Error&) {
      row.zero_discord = false;
    }
    const ClassVerdict sep = ppt_verdict(rho);
    row.separable = sep.member;
    row.separable_certified = sep.certified;
  });
  return rows;
}

}  // namespace qkit

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

#include <doctest.h>

#include <cmath>

#include "qkit/channels.hpp"
#include "qkit/fixtures.hpp"
#include "qkit/measures.hpp"
#include "qkit/rng.hpp"

using namespace qkit;

namespace {

const Dims k22{2, 2};

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

}  // namespace

TEST_CASE("Kraus completeness is enforced") {
  CHECK_THROWS_AS(KrausChannel(k22, {0.9 * identity(4)}), Error);
  try {
    KrausChannel(k22, {0.9 * identity(4)});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCPTP);
  }
  CHECK_NOTHROW(KrausChannel::depolarizing(k22, 0.3));
  CHECK_NOTHROW(KrausChannel::partial_dephasing(k22, BasisSpec::fourier(2), 0.4));
}

TEST_CASE("channel examples") {
  Rng rng(1);
  const DensityMatrix rho = random_state(k22, 3, rng);
  CHECK((apply_channel(KrausChannel::identity(k22), rho).mat() - rho.mat()).norm() < 1e-15);
  CHECK((apply_channel(KrausChannel::depolarizing(k22, 1.0), rho).mat() - identity(4) / 4.0).norm() <
        1e-14);

  // Projector sandwich by hand: keep the |00><00| and |11><11| corners.
  const DensityMatrix dephased =
      apply_channel(KrausChannel::dephasing(k22, BasisSpec::computational(2)), bell_state());
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 0.5;
  CHECK((dephased.mat() - expect).norm() < 1e-15);
  CHECK((dephase_A(bell_state(), BasisSpec::computational(2)).mat() - expect).norm() < 1e-15);

  ComplexVector v(2);
  v << 1, 1;
  const DensityMatrix plus(Dims{2, 1}, projector(v.normalized()));
  CHECK((dephase_A(plus, BasisSpec::computational(2)).mat() - 0.5 * identity(2)).norm() < 1e-15);

  const DensityMatrix cq = *fixture("cq");
  CHECK((dephase_A(cq, BasisSpec::fourier(2)).mat() - cq.mat()).norm() < 1e-15);
}

TEST_CASE("dephasing properties") {
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix rho = random_state(k22, rng.uniform_int(1, 4), rng);
    const BasisSpec b(random_unitary(2, rng));
    const DensityMatrix once = dephase_A(rho, b);
    CHECK((dephase_A(once, b).mat() - once.mat()).norm() < 1e-12);
    CHECK(is_zero_bd_discord(once, b).member);
    const DensityMatrix out = apply_channel(KrausChannel::depolarizing(k22, rng.uniform()), rho);
    CHECK(eig_hermitian(out.mat()).values.minCoeff() > -1e-12);
  }
}

TEST_CASE("classical operation checks") {
  const BasisSpec c = BasisSpec::computational(2);
  SUBCASE("dephasing preserves zero BD-discord in both variants") {
    const ClassicalityReport r =
        is_classical_operation(KrausChannel::dephasing(k22, c), Family::ZeroBDDiscord, c, 200, 1);
    CHECK(r.plain);
    CHECK(r.post_selected);
  }
  SUBCASE("Hadamard on A is not incoherent-preserving") {
    const Dims single{2, 1};
    const ClassicalityReport r = is_classical_operation(KrausChannel::unitary(single, hadamard()),
                                                        Family::Incoherent, c, 50, 2);
    CHECK_FALSE(r.plain);
    CHECK_FALSE(r.post_selected);
  }
  SUBCASE("local unitary on B preserves separability") {
    Rng rng(3);
    const ClassicalityReport r = is_classical_operation(
        KrausChannel::local_b(k22, random_unitary(2, rng)), Family::Separable, std::nullopt, 200, 3);
    CHECK(r.plain);
    CHECK(r.post_selected);
  }
  SUBCASE("local unitary on B preserves zero discord") {
    Rng rng(4);
    const ClassicalityReport r = is_classical_operation(
        KrausChannel::local_b(k22, random_unitary(2, rng)), Family::ZeroDiscord, std::nullopt, 30, 4);
    CHECK(r.plain);
  }
  SUBCASE("basis is required for basis-dependent families") {
    CHECK_THROWS_AS(is_classical_operation(KrausChannel::identity(k22), Family::ZeroBDDiscord,
                                           std::nullopt, 5, 0),
                    Error);
  }
}

TEST_CASE("monotonicity harness") {
  const BasisSpec c = BasisSpec::computational(2);
  SUBCASE("partial dephasing never increases BD-discord") {
    const auto r = monotonicity_check(KrausChannel::partial_dephasing(k22, c, 0.4),
                                      MeasureId::BDDiscord, c, 200, 5);
    CHECK(r.passed());
    CHECK(r.max_violation <= 1e-9);
  }
  SUBCASE("partial dephasing never increases coherence") {
    const Dims single{2, 1};
    const auto r = monotonicity_check(KrausChannel::partial_dephasing(single, c, 0.7),
                                      MeasureId::Coherence, c, 200, 6);
    CHECK(r.passed());
  }
  SUBCASE("identity channel gives equality") {
    const auto r = monotonicity_check(KrausChannel::identity(k22), MeasureId::BDDiscord, c, 50, 7);
    CHECK(r.passed());
    CHECK(std::abs(r.max_violation) < 1e-12);
  }
  SUBCASE("full dephasing drives coherence to zero") {
    const Dims single{2, 1};
    Rng rng(8);
    for (int k = 0; k < 20; ++k) {
      const DensityMatrix rho = random_state(single, 2, rng);
      CHECK(coherence_skew(dephase_A(rho, c), c).value == 0.0);
    }
  }
  SUBCASE("selective monotonicity of dephasing branches") {
    const auto r = selective_monotonicity_check(KrausChannel::dephasing(k22, c),
                                                MeasureId::BDDiscord, c, 200, 9);
    CHECK(r.passed());
  }
  SUBCASE("non-classical channels fail the prerequisite") {
    const Dims single{2, 1};
    try {
      monotonicity_check(KrausChannel::unitary(single, hadamard()), MeasureId::Coherence, c, 10, 0);
      FAIL("expected PrereqFailed");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PrereqFailed);
    }
  }
}

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

#include "oracles.hpp"
#include "qkit/channels.hpp"
#include "qkit/classify.hpp"
#include "qkit/fixtures.hpp"
#include "qkit/rng.hpp"

using namespace qkit;

namespace {

DensityMatrix ket_state(double a, double b) {
  ComplexVector v(2);
  v << a, b;
  return DensityMatrix(Dims{2, 1}, projector(v.normalized()));
}

const double half[] = {0.5, 0.5};

}  // namespace

TEST_CASE("constructors match hand expansions") {
  const double p10[] = {1.0, 0.0};
  const DensityMatrix z = make_incoherent(p10, BasisSpec::computational(2));
  CHECK(std::abs(z.mat()(0, 0) - 1.0) < 1e-15);

  const DensityMatrix mixed = make_incoherent(half, BasisSpec::computational(2));
  CHECK((mixed.mat() - 0.5 * identity(2)).norm() < 1e-15);

  const double p31[] = {0.75, 0.25};
  const DensityMatrix pm = make_incoherent(p31, BasisSpec::fourier(2));
  ComplexMatrix expect(2, 2);
  expect << 0.5, 0.25, 0.25, 0.5;
  CHECK((pm.mat() - expect).norm() < 1e-15);

  const double bad[] = {0.7, 0.2};
  CHECK_THROWS_AS(make_incoherent(bad, BasisSpec::computational(2)), Error);
  const double three[] = {0.2, 0.3, 0.5};
  CHECK_THROWS_AS(make_incoherent(three, BasisSpec::computational(2)), Error);
}

TEST_CASE("make_cq with identical B states factorises") {
  Rng rng(1);
  const DensityMatrix rb = random_state(Dims{3, 1}, 2, rng);
  const double p[] = {0.3, 0.7};
  const DensityMatrix cq = make_cq(p, BasisSpec::computational(2), {rb, rb});
  const DensityMatrix sa = make_incoherent(p, BasisSpec::computational(2));
  CHECK((cq.mat() - tensor(sa, rb).mat()).norm() < 1e-14);
}

TEST_CASE("is_incoherent examples") {
  const auto c = BasisSpec::computational(2);
  const DensityMatrix plus = ket_state(1, 1);
  const ClassVerdict v = is_incoherent(plus, c);
  CHECK_FALSE(v.member);
  CHECK(v.residual == doctest::Approx(0.5));
  CHECK(is_incoherent(plus, BasisSpec::fourier(2)).member);
  const ClassVerdict mixed = is_incoherent(DensityMatrix(Dims{2, 1}, 0.5 * identity(2)), c);
  CHECK(mixed.member);
  CHECK(mixed.residual == 0.0);
}

TEST_CASE("is_zero_bd_discord examples") {
  const auto c = BasisSpec::computational(2);
  const DensityMatrix bell = bell_state();
  const ClassVerdict v = is_zero_bd_discord(bell, c);
  CHECK_FALSE(v.member);
  // Off-diagonal A-blocks of Phi+ hold one entry of 1/2 each: 2 * (1/2)^2.
  CHECK(v.residual == doctest::Approx(0.5));
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    CHECK_FALSE(is_zero_bd_discord(bell, BasisSpec(random_unitary(2, rng))).member);
  }
  const DensityMatrix prod = tensor(ket_state(1, 1), random_state(Dims{2, 1}, 2, rng));
  CHECK(is_zero_bd_discord(prod, BasisSpec::fourier(2)).member);
}

TEST_CASE("zero BD-discord iff invariant under dephasing") {
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const BasisSpec b(random_unitary(2, rng));
    const DensityMatrix rho =
        k % 2 ? random_state(Dims{2, 2}, rng.uniform_int(1, 4), rng)
              : make_cq(random_distribution(2, rng), b,
                        {random_state(Dims{2, 1}, 2, rng), random_state(Dims{2, 1}, 1, rng)});
    const bool invariant = (dephase_A(rho, b).mat() - rho.mat()).norm() < 1e-10;
    CHECK(is_zero_bd_discord(rho, b).member == invariant);
  }
}

TEST_CASE("is_zero_discord recovers a rotated CQ witness") {
  Rng rng(4);
  for (int k = 0; k < 10; ++k) {
    const BasisSpec b(random_unitary(2, rng));
    const DensityMatrix rho =
        make_cq(random_distribution(2, rng), b,
                {random_state(Dims{2, 1}, 1, rng), random_state(Dims{2, 1}, 2, rng)});
    const ClassVerdict v = is_zero_discord(rho, Budget{}, 100 + k);
    CHECK(v.member);
    REQUIRE(v.witness);
    CHECK(is_zero_bd_discord(rho, *v.witness).residual < 1e-9);
  }
  // Qutrit A, random basis.
  const BasisSpec b3(random_unitary(3, rng));
  const DensityMatrix r3 = make_cq(random_distribution(3, rng), b3,
                                   {random_state(Dims{2, 1}, 1, rng), random_state(Dims{2, 1}, 2, rng),
                                    random_state(Dims{2, 1}, 1, rng)});
  CHECK(is_zero_discord(r3, Budget{}, 9).member);
}

TEST_CASE("Bell state residual stays above a grid lower bound") {
  const DensityMatrix bell = bell_state();
  const double grid = oracle::grid_min_bd_residual(bell.mat(), 2);
  const ClassVerdict v = is_zero_discord(bell);
  CHECK_FALSE(v.member);
  CHECK(v.residual <= grid + 1e-9);
  CHECK(v.residual > 0.1);
}

TEST_CASE("product states have zero discord via the eigenbasis") {
  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    const DensityMatrix rho =
        tensor(random_state(Dims{2, 1}, 2, rng), random_state(Dims{3, 1}, 3, rng));
    CHECK(is_zero_discord(rho, Budget{}, k).member);
  }
}

TEST_CASE("PPT verdicts against the explicit partial transpose") {
  const DensityMatrix bell = bell_state();
  const ClassVerdict v = is_separable_2x2(bell);
  CHECK_FALSE(v.member);
  CHECK(v.residual == doctest::Approx(0.5));

  for (double p : {0.0, 0.1, 0.2, 1.0 / 3.0, 0.5, 0.9}) {
    const DensityMatrix w = werner(p);
    const double lmin = oracle::min_eig(oracle::partial_transpose_b(w.mat(), 2, 2));
    CHECK(ppt_min_eigenvalue(w) == doctest::Approx(lmin).epsilon(1e-12));
    CHECK(lmin == doctest::Approx((1 - 3 * p) / 4).epsilon(1e-12));
  }
  const ClassVerdict boundary = is_separable_2x2(werner(1.0 / 3.0));
  CHECK(boundary.member);
  CHECK(boundary.residual <= 1e-9);

  Rng rng(6);
  for (int k = 0; k < 20; ++k) {
    const int n = rng.uniform_int(1, 5);
    std::vector<DensityMatrix> as, bs;
    for (int j = 0; j < n; ++j) {
      as.push_back(random_state(Dims{2, 1}, rng.uniform_int(1, 2), rng));
      bs.push_back(random_state(Dims{2, 1}, rng.uniform_int(1, 2), rng));
    }
    CHECK(is_separable_2x2(make_separable(random_distribution(n, rng), as, bs)).member);
  }

  const DensityMatrix big(Dims{3, 3}, identity(9) / 9.0);
  CHECK_THROWS_AS(is_separable_2x2(big), Error);
  CHECK_FALSE(ppt_verdict(big).certified);
  const DensityMatrix two_three(Dims{2, 3}, identity(6) / 6.0);
  CHECK(is_separable_2x2(two_three).member);
}

TEST_CASE("inclusion ladder on constructed product states") {
  Rng rng(7);
  const auto c = BasisSpec::computational(2);
  int checked = 0;
  for (int k = 0; k < 60; ++k) {
    const DensityMatrix ra = k % 3 == 0 ? make_incoherent(random_distribution(2, rng), c)
                                        : random_state(Dims{2, 1}, rng.uniform_int(1, 2), rng);
    const DensityMatrix rho = tensor(ra, random_state(Dims{2, 1}, rng.uniform_int(1, 2), rng));
    const bool inc = is_incoherent(ra, c).member;
    const bool zbd = is_zero_bd_discord(rho, c).member;
    const bool zd = is_zero_discord(rho, Budget{}, k).member;
    const bool sep = is_separable_2x2(rho).member;
    if (inc) {
      CHECK(zbd);
      ++checked;
    }
    if (zbd) CHECK(zd);
    if (zd) CHECK(sep);
  }
  CHECK(checked >= 15);
}

TEST_CASE("local unitaries on B never change a verdict") {
  Rng rng(8);
  const auto c = BasisSpec::computational(2);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix rho =
        k % 2 ? random_state(Dims{2, 2}, rng.uniform_int(1, 4), rng)
              : make_cq(random_distribution(2, rng), c,
                        {random_state(Dims{2, 1}, 2, rng), random_state(Dims{2, 1}, 1, rng)});
    const ComplexMatrix w = kron(identity(2), random_unitary(2, rng));
    const DensityMatrix moved = DensityMatrix::trusted(rho.dims(), w * rho.mat() * w.adjoint());
    CHECK(is_zero_bd_discord(rho, c).member == is_zero_bd_discord(moved, c).member);
    CHECK(is_zero_discord(rho, Budget{}, k).member == is_zero_discord(moved, Budget{}, k).member);
    CHECK(is_separable_2x2(rho).member == is_separable_2x2(moved).member);
  }
}

TEST_CASE("zero-discord verdict is invariant under unitaries on A") {
  Rng rng(9);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho =
        k % 2 ? random_state(Dims{2, 2}, rng.uniform_int(1, 4), rng)
              : make_cq(random_distribution(2, rng), BasisSpec(random_unitary(2, rng)),
                        {random_state(Dims{2, 1}, 2, rng), random_state(Dims{2, 1}, 1, rng)});
    const ComplexMatrix w = kron(random_unitary(2, rng), identity(2));
    const DensityMatrix moved = DensityMatrix::trusted(rho.dims(), w * rho.mat() * w.adjoint());
    CHECK(is_zero_discord(rho, Budget{}, k).member == is_zero_discord(moved, Budget{}, k).member);
  }
}

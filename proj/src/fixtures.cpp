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

#include "qkit/fixtures.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "qkit/classify.hpp"

namespace qkit {

namespace {

ComplexVector ket2(Complex a, Complex b) {
  ComplexVector v(2);
  v << a, b;
  return v;
}

DensityMatrix qubit(const ComplexVector& v) {
  return DensityMatrix(Dims{2, 1}, projector(v));
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

DensityMatrix zero() { return qubit(ket2(1, 0)); }
DensityMatrix one() { return qubit(ket2(0, 1)); }
DensityMatrix plus() { return qubit(ket2(kInvSqrt2, kInvSqrt2)); }
DensityMatrix minus() { return qubit(ket2(kInvSqrt2, -kInvSqrt2)); }

DensityMatrix incoherent_product() {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 0.75;
  a(1, 1) = 0.25;
  return tensor(DensityMatrix(Dims{2, 1}, a),
                DensityMatrix(Dims{2, 1}, 0.5 * identity(2)));
}

DensityMatrix cq() {
  const double half[] = {0.5, 0.5};
  return make_cq(half, BasisSpec::fourier(2), {zero(), one()});
}

DensityMatrix discordant_separable() {
  const double half[] = {0.5, 0.5};
  return make_separable(half, {zero(), plus()}, {zero(), one()});
}

using Builder = std::function<DensityMatrix()>;

const std::map<std::string, Builder>& registry() {
  static const std::map<std::string, Builder> r{
      {"bell", [] { return bell_state(); }},
      {"coherent_product", [] { return tensor(plus(), zero()); }},
      {"cq", [] { return cq(); }},
      {"discordant_separable", [] { return discordant_separable(); }},
      {"incoherent", [] { return incoherent_product(); }},
      {"maximally_mixed", [] { return DensityMatrix(Dims{2, 2}, 0.25 * identity(4)); }},
      {"minus", [] { return minus(); }},
      {"plus", [] { return plus(); }},
      {"plus_times_zero", [] { return tensor(plus(), zero()); }},
      {"random_switch", [] { return DensityMatrix(Dims{2, 1}, 0.5 * identity(2)); }},
      {"werner_0.2", [] { return werner(0.2); }},
      {"werner_0.9", [] { return werner(0.9); }},
      {"werner_1/3", [] { return werner(1.0 / 3.0); }},
  };
  return r;
}

}  // namespace

DensityMatrix werner(double p) {
  const ComplexMatrix m = (1.0 - p) * 0.25 * identity(4) + p * bell_state().mat();
  return DensityMatrix(Dims{2, 2}, m);
}

DensityMatrix bell_state() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = kInvSqrt2;
  v(3) = kInvSqrt2;
  return DensityMatrix(Dims{2, 2}, projector(v));
}

std::optional<DensityMatrix> fixture(const std::string& name) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) return std::nullopt;
  return it->second();
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

std::vector<NamedState> table_fixtures() {
  std::vector<NamedState> rows;
  for (const char* name : {"incoherent", "coherent_product", "cq", "discordant_separable",
                           "werner_0.2", "werner_0.9", "bell"}) {
    rows.push_back(NamedState{name, *fixture(name)});
  }
  return rows;
}

}  // namespace qkit

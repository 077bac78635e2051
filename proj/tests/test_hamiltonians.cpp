// Copyright 2026 The thermoent Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "thermoent/dynamics.hpp"
#include "thermoent/errors.hpp"
#include "thermoent/hamiltonians.hpp"

using namespace thermoent;

namespace {

ModelConfig config(ModelKind kind, std::map<std::string, double> ratios, int dim = 4) {
  ModelConfig c;
  c.model = kind;
  c.ratios = std::move(ratios);
  if (kind != ModelKind::three_qubit) c.mode_dims = {{"m1", dim}, {"m2", dim}};
  return c;
}

double commutator_norm(const SparseMatrix& a, const SparseMatrix& b) {
  return Matrix(a * b - b * a).norm();
}

PhysicalTrapParams calcium() {
  PhysicalTrapParams p;
  p.mass = 40.0 * kAtomicMassUnit;
  p.charge = kElementaryCharge;
  p.omega_x = 2.0 * std::numbers::pi * 2.9e6;
  p.omega_z = 2.0 * std::numbers::pi * 150e3;
  p.rabi_frequency = 2.0 * std::numbers::pi * 101e3;
  p.lamb_dicke = 0.06;
  return p;
}

}  // namespace

TEST_CASE("every model conserves the excitation number") {
  const std::vector<ModelConfig> models{
      config(ModelKind::one_side, {{"r_1S", 0.18}}),
      config(ModelKind::one_middle, {{"r_1M", 0.7}}),
      config(ModelKind::two_side, {{"r_2S_BS", 1.0}, {"r_2S_b", 0.5}}, 3),
      config(ModelKind::two_middle, {{"r_2M_b1", 0.5}, {"r_2M_b2", 0.5}, {"r_2M_a2", 1.0}}, 3),
      config(ModelKind::side_side, {{"r_1S1S_BS", 0.3}, {"r_1S1S_b2", 0.9}}, 3),
      config(ModelKind::three_qubit, {{"k2_over_k1", 0.7}})};
  for (const auto& c : models) {
    const Model m = build_model(c);
    const SparseMatrix& h = m.hamiltonian.matrix();
    CHECK(Matrix(h - SparseMatrix(h.adjoint())).norm() < 1e-14);
    CHECK(commutator_norm(h, excitation_number(m.space).matrix()) < 1e-13);
    CHECK(h.nonZeros() > 0);
  }
}

TEST_CASE("1S matches a dense construction") {
  const Model m = build_model(config(ModelKind::one_side, {{"r_1S", 0.3}}));
  const Matrix id = Matrix::Identity(4, 4);
  const Matrix a = annihilation(4);
  const Matrix jc = kron(kron(pauli(Pauli::plus), a), id);
  const Matrix bs = kron(kron(Matrix::Identity(2, 2), a.adjoint()), a);
  const Matrix expected = jc + jc.adjoint() + 0.3 * (bs + bs.adjoint());
  CHECK((Matrix(m.hamiltonian.matrix()) - expected).norm() < 1e-14);
  CHECK(m.space.labels() == std::vector<std::string>{"q", "m1", "m2"});
}

TEST_CASE("1M couples the qubit to both modes") {
  const Model m = build_model(config(ModelKind::one_middle, {{"r_1M", 0.5}}));
  const Matrix a = annihilation(4);
  const Matrix id = Matrix::Identity(4, 4);
  const Matrix j1 = kron(kron(pauli(Pauli::plus), a), id);
  const Matrix j2 = kron(kron(pauli(Pauli::plus), id), a);
  const Matrix expected = j1 + j1.adjoint() + 0.5 * (j2 + j2.adjoint());
  CHECK((Matrix(m.hamiltonian.matrix()) - expected).norm() < 1e-14);
}

TEST_CASE("JC Rabi oscillation in the n-excitation doublet") {
  const HilbertSpace s = HilbertSpace::qubit("q").tensor(HilbertSpace::mode("m", 6));
  const UnitaryPropagator u(jc_term(s, "q", "m", 1.0));
  for (int n = 1; n <= 4; ++n) {
    Matrix rho = Matrix::Zero(12, 12);
    rho(n, n) = 1.0;  // |g, n>
    for (double tau : {0.3, 1.1, 2.7}) {
      const Matrix out = u.evolve(rho, tau);
      const double pe = out(6 + n - 1, 6 + n - 1).real();
      CHECK(std::abs(pe - std::pow(std::sin(std::sqrt(n) * tau), 2)) < 1e-12);
    }
  }
}

TEST_CASE("JC phase rotates the coupling") {
  const HilbertSpace s = HilbertSpace::qubit("q").tensor(HilbertSpace::mode("m", 3));
  const SparseOperator h = jc_term(s, "q", "m", 2.0, std::numbers::pi / 2);
  // <e,0| H |g,1> = 2 i
  CHECK(std::abs(Matrix(h.matrix())(3, 1) - Complex(0.0, 2.0)) < 1e-14);
}

TEST_CASE("2S with r_b = 0 restricts to 1S") {
  const Model two = build_model(config(ModelKind::two_side, {{"r_2S_BS", 0.4}, {"r_2S_b", 0.0}}, 3));
  const Model one = build_model(config(ModelKind::one_side, {{"r_1S", 0.4}}, 3));
  const Matrix h2 = two.hamiltonian.matrix();
  const Matrix h1 = one.hamiltonian.matrix();
  // qb is the second factor; its ground sector is every other 9-block.
  for (Index i = 0; i < 18; ++i) {
    for (Index j = 0; j < 18; ++j) {
      const Index qa_i = i / 9, qa_j = j / 9;
      const Index ii = qa_i * 18 + (i % 9), jj = qa_j * 18 + (j % 9);
      CHECK(std::abs(h2(ii, jj) - h1(i, j)) < 1e-15);
    }
  }
}

TEST_CASE("ratio validation") {
  CHECK_THROWS_AS(build_model(config(ModelKind::one_side, {})), InvalidArgument);
  CHECK_THROWS_AS(build_model(config(ModelKind::one_side, {{"r_1S", -1.0}})), InvalidArgument);
  CHECK_THROWS_AS(build_model(config(ModelKind::one_side, {{"r_1S", 1.0}, {"r_1M", 1.0}})), InvalidArgument);
  CHECK_THROWS_AS(build_model(config(ModelKind::two_side, {{"r_2S_BS", 1.0}, {"r_2S_b", 0.0}, {"r_2S_a1", 0.0}})),
                  InvalidArgument);
  CHECK(parse_model_kind("1S-1S") == ModelKind::side_side);
  CHECK(to_string(ModelKind::two_middle) == "2M");
  CHECK_THROWS_AS(parse_model_kind("4Q"), InvalidArgument);
}

TEST_CASE("renormalisation when the normalising coupling vanishes") {
  const Model m = build_model(
      config(ModelKind::two_side, {{"r_2S_BS", 1.0}, {"r_2S_b", 2.0}, {"r_2S_a1", 0.0}}, 3));
  CHECK(m.renormalization == 2.0);
  double max_jc = 0.0;
  const Matrix h = m.hamiltonian.matrix();
  max_jc = h.cwiseAbs().maxCoeff();
  CHECK(max_jc == doctest::Approx(std::sqrt(2.0)));  // JC sqrt(2) element at the top Fock level
}

TEST_CASE("equilibrium separation solves the force balance") {
  const PhysicalTrapParams p = calcium();
  const double c = p.charge * p.charge / (4.0 * std::numbers::pi * kVacuumPermittivity);
  auto force = [&](double z) { return p.mass * p.omega_z * p.omega_z * z - c / (4.0 * z * z); };
  double lo = 1e-7, hi = 1e-3;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (force(mid) > 0.0 ? hi : lo) = mid;
  }
  CHECK(equilibrium_separation(p) == doctest::Approx(lo + hi).epsilon(1e-10));
  const double dz = equilibrium_separation(p);
  CHECK(coulomb_bs_rate(p) == doctest::Approx(c / (2.0 * p.mass * p.omega_x * dz * dz * dz)));
  CHECK(jc_rate(p) == doctest::Approx(p.rabi_frequency * p.lamb_dicke));
  CHECK(coulomb_bs_rate(p) / jc_rate(p) == doctest::Approx(0.32).epsilon(0.01));
  PhysicalTrapParams bad = p;
  bad.omega_z = 0.0;
  CHECK_THROWS_AS(equilibrium_separation(bad), InvalidArgument);
}

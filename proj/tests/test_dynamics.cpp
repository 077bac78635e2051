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
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "thermoent/dynamics.hpp"
#include "thermoent/errors.hpp"
#include "thermoent/hamiltonians.hpp"
#include "thermoent/states.hpp"

using namespace thermoent;

namespace {

Matrix expm_evolve(const Matrix& h, const Matrix& rho, double tau) {
  const Matrix u = (Matrix(h * Complex(0.0, -tau))).exp();
  return u * rho * u.adjoint();
}

Matrix vec_to_matrix(const Vector& v, Index n) {
  Matrix m(n, n);
  for (Index j = 0; j < n; ++j) m.col(j) = v.segment(j * n, n);
  return m;
}

Vector matrix_to_vec(const Matrix& m) {
  Vector v(m.size());
  for (Index j = 0; j < m.cols(); ++j) v.segment(j * m.rows(), m.rows()) = m.col(j);
  return v;
}

Model small_1s(double r, int dim) {
  ModelConfig c;
  c.model = ModelKind::one_side;
  c.ratios = {{"r_1S", r}};
  c.mode_dims = {{"m1", dim}, {"m2", dim}};
  return build_model(c);
}

}  // namespace

TEST_CASE("time grid") {
  const TimeGrid g{0.0, 2.0, 5};
  const auto t = g.times();
  REQUIRE(t.size() == 5);
  CHECK(t[1] == doctest::Approx(0.5));
  CHECK(t.back() == 2.0);
  CHECK_THROWS_AS((TimeGrid{1.0, 1.0, 5}.validate()), InvalidArgument);
  CHECK_THROWS_AS((TimeGrid{0.0, 1.0, 1}.validate()), InvalidArgument);
}

TEST_CASE("jump operators") {
  const HilbertSpace s = HilbertSpace::qubit("q").tensor(HilbertSpace::mode("m", 3));
  BathSpec bath;
  bath.channels = {{ChannelKind::qubit_dephasing, "q", 0.25, 0.0},
                   {ChannelKind::qubit_relaxation, "q", 0.1, 0.5},
                   {ChannelKind::mode_damping, "m", 0.2, 0.0}};
  const auto jumps = lindblad_jumps(bath, s);
  REQUIRE(jumps.size() == 4);  // zero-occupancy a^dagger term dropped
  CHECK((Matrix(jumps[0].matrix()) - 0.5 * embed(pauli(Pauli::z), s, "q").matrix()).norm() < 1e-15);
  CHECK((Matrix(jumps[1].matrix()) - std::sqrt(0.15) * embed(pauli(Pauli::minus), s, "q").matrix()).norm() < 1e-15);
  CHECK((Matrix(jumps[2].matrix()) - std::sqrt(0.05) * embed(pauli(Pauli::plus), s, "q").matrix()).norm() < 1e-15);
  CHECK((Matrix(jumps[3].matrix()) - std::sqrt(0.2) * embed(annihilation(3), s, "m").matrix()).norm() < 1e-15);
  BathSpec wrong;
  wrong.channels = {{ChannelKind::mode_damping, "q", 0.1, 0.0}};
  CHECK_THROWS_AS(lindblad_jumps(wrong, s), InvalidArgument);
  BathSpec negative;
  negative.channels = {{ChannelKind::qubit_dephasing, "q", -0.1, 0.0}};
  CHECK_THROWS_AS(negative.validate(), InvalidArgument);
  CHECK(parse_channel_kind("mode_damping") == ChannelKind::mode_damping);
}

TEST_CASE("unitary propagation matches the matrix exponential") {
  const Model m = small_1s(0.3, 4);
  const Matrix h = m.hamiltonian.matrix();
  const Matrix rho = compose({thermal_qubit(0.2, "q"), thermal_oscillator(0.7, 4, "m1", 1.0),
                              thermal_oscillator(0.1, 4, "m2", 1.0)})
                         .matrix();
  const UnitaryPropagator u(m.hamiltonian);
  for (double tau : {0.0, 0.4, 3.3}) {
    CHECK((u.evolve(rho, tau) - expm_evolve(h, rho, tau)).norm() < 1e-12);
  }
  // A random dense Hermitian generator lands in a single block.
  std::mt19937 gen(5);
  std::normal_distribution<double> d;
  Matrix g(6, 6);
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j) g(i, j) = Complex(d(gen), d(gen));
  const Matrix hr = g + g.adjoint();
  const HilbertSpace s = HilbertSpace::mode("a", 3).tensor(HilbertSpace::mode("b", 2));
  const UnitaryPropagator ur(Operator(s, hr));
  CHECK(ur.partition()->num_blocks() == 1);
  Matrix r0 = Matrix::Zero(6, 6);
  r0(2, 2) = 1.0;
  CHECK((ur.evolve(r0, 0.9) - expm_evolve(hr, r0, 0.9)).norm() < 1e-12);
}

TEST_CASE("trajectory paths agree") {
  const Model m = small_1s(0.18, 6);
  const DensityMatrix rho = compose({thermal_qubit(0.0, "q"), thermal_oscillator(1.0, 6, "m1", 1.0),
                                     thermal_oscillator(0.0, 6, "m2", 1.0)});
  auto u = std::make_shared<const UnitaryPropagator>(m.hamiltonian);
  UnitaryTrajectory traj(u, Ensemble::from_density(rho));
  const BlockDensity tiles = BlockDensity::from_dense(m.space, u->partition(), rho.matrix());
  for (double tau : {0.5, 2.0}) {
    const SparseMatrix a = traj.at(tau).reduced({"m1", "m2"});
    const SparseMatrix b = u->evolve(tiles, tau).reduced({"m1", "m2"});
    const Matrix c = partial_trace(expm_evolve(m.hamiltonian.matrix(), rho.matrix(), tau), m.space, {"m1", "m2"});
    CHECK((Matrix(a) - c).norm() < 1e-12);
    CHECK((Matrix(b) - c).norm() < 1e-12);
  }
}

TEST_CASE("evolve_unitary keeps trace and purity") {
  const Model m = small_1s(0.5, 3);
  const Vector psi = Vector::Unit(18, 9 + 1);
  const auto out = evolve_unitary(m.hamiltonian.to_dense(), DensityMatrix::pure(m.space, psi), {0.0, 5.0, 11});
  for (const auto& r : out) {
    CHECK(std::abs(r.matrix().trace() - 1.0) < 1e-12);
    CHECK(std::abs((r.matrix() * r.matrix()).trace() - 1.0) < 1e-12);
  }
}

TEST_CASE("single-excitation chain oracle") {
  const double k = 0.7;
  ModelConfig c;
  c.model = ModelKind::three_qubit;
  c.ratios = {{"k2_over_k1", k}};
  const Model m = build_model(c);
  Vector psi = Vector::Zero(8);
  psi(4) = 1.0;  // |e g g>
  const auto out = evolve_unitary(m.hamiltonian.to_dense(), DensityMatrix::pure(m.space, psi), {0.0, 6.0, 31});
  const double w = std::sqrt(1.0 + k * k);
  const auto t = TimeGrid{0.0, 6.0, 31}.times();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double c1 = (k * k + std::cos(w * t[i])) / (w * w);
    const double c2 = std::sin(w * t[i]) / w;
    const double c3 = k * (std::cos(w * t[i]) - 1.0) / (w * w);
    CHECK(std::abs(out[i].matrix()(4, 4).real() - c1 * c1) < 1e-12);
    CHECK(std::abs(out[i].matrix()(2, 2).real() - c2 * c2) < 1e-12);
    CHECK(std::abs(out[i].matrix()(1, 1).real() - c3 * c3) < 1e-12);
  }
}

TEST_CASE("qubit relaxation and dephasing decay laws") {
  const HilbertSpace s = HilbertSpace::qubit("q");
  const Operator h = Operator::zero(s);
  Matrix rho0(2, 2);
  rho0 << 0.4, 0.3, 0.3, 0.6;
  const double lambda = 0.3;
  const TimeGrid grid{0.0, 4.0, 9};
  const auto relax = evolve_lindblad(h, {Operator(s, std::sqrt(lambda) * pauli(Pauli::minus))},
                                     DensityMatrix(s, rho0), grid);
  const auto deph = evolve_lindblad(h, {Operator(s, std::sqrt(lambda) * pauli(Pauli::z))},
                                    DensityMatrix(s, rho0), grid);
  const auto t = grid.times();
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(std::abs(relax[i].matrix()(1, 1).real() - 0.6 * std::exp(-lambda * t[i])) < 1e-8);
    CHECK(std::abs(relax[i].matrix()(0, 1).real() - 0.3 * std::exp(-0.5 * lambda * t[i])) < 1e-8);
    CHECK(std::abs(deph[i].matrix()(0, 1).real() - 0.3 * std::exp(-2.0 * lambda * t[i])) < 1e-8);
    CHECK(std::abs(deph[i].matrix()(1, 1).real() - 0.6) < 1e-10);
  }
}

TEST_CASE("damped oscillator relaxes to the bath occupation") {
  const int dim = 30;
  const HilbertSpace s = HilbertSpace::mode("m", dim);
  BathSpec bath;
  bath.channels = {{ChannelKind::mode_damping, "m", 0.5, 0.4}};
  std::vector<Operator> jumps;
  for (const auto& j : lindblad_jumps(bath, s)) jumps.push_back(j.to_dense());
  const auto out = evolve_lindblad(Operator::zero(s), jumps, thermal_oscillator(1.0, dim, "m", 1e-6),
                                   {0.0, 5.0, 6});
  const auto t = TimeGrid{0.0, 5.0, 6}.times();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double expect = 1.0 * std::exp(-0.5 * t[i]) + 0.4 * (1.0 - std::exp(-0.5 * t[i]));
    CHECK(std::abs(mean_occupation(out[i]) - expect) < 1e-5);
  }
}

TEST_CASE("lindblad propagation matches the superoperator exponential") {
  const Model m = small_1s(0.4, 3);
  BathSpec bath;
  bath.channels = {{ChannelKind::qubit_dephasing, "q", 0.05, 0.0},
                   {ChannelKind::qubit_relaxation, "q", 0.1, 0.3},
                   {ChannelKind::mode_damping, "m1", 0.07, 0.2}};
  std::vector<Operator> jumps;
  for (const auto& j : lindblad_jumps(bath, m.space)) jumps.push_back(j.to_dense());
  const DensityMatrix rho0 = compose({thermal_qubit(0.1, "q"), thermal_oscillator(0.5, 3, "m1", 1.0),
                                      thermal_oscillator(0.0, 3, "m2", 1.0)});
  const Matrix l = lindblad_superoperator(m.hamiltonian.to_dense(), jumps);
  const TimeGrid grid{0.0, 3.0, 4};
  const auto out = evolve_lindblad(m.hamiltonian.to_dense(), jumps, rho0, grid);
  const auto t = grid.times();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Matrix prop = (Matrix(l * t[i])).exp();
    const Matrix expect = vec_to_matrix(prop * matrix_to_vec(rho0.matrix()), rho0.dim());
    CHECK((out[i].matrix() - expect).norm() < 1e-7);
    CHECK(std::abs(out[i].matrix().trace() - 1.0) < 1e-10);
  }
}

TEST_CASE("zero-rate lindblad equals unitary") {
  const Model m = small_1s(0.18, 8);
  const DensityMatrix rho0 = compose({thermal_qubit(0.0, "q"), thermal_oscillator(0.5, 8, "m1", 1.0),
                                      thermal_oscillator(0.0, 8, "m2", 1.0)});
  const TimeGrid grid{0.0, 6.0, 13};
  const auto a = evolve_lindblad(m.hamiltonian.to_dense(), {}, rho0, grid);
  const auto b = evolve_unitary(m.hamiltonian.to_dense(), rho0, grid);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i].matrix() - b[i].matrix()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("step control refuses an unreachable tolerance") {
  const Model m = small_1s(1.0, 3);
  const DensityMatrix rho0 = compose({thermal_qubit(0.0, "q"), thermal_oscillator(0.5, 3, "m1", 1.0),
                                      thermal_oscillator(0.0, 3, "m2", 1.0)});
  StepControl control;
  control.tolerance = 1e-30;
  control.max_halvings = 1;
  control.initial_step = 0.5;
  CHECK_THROWS_AS(evolve_lindblad(m.hamiltonian.to_dense(), {}, rho0, {0.0, 5.0, 3}, control), NumericalError);
}

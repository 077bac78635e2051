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

#include "thermoent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <set>

#include "thermoent/dynamics.hpp"
#include "thermoent/errors.hpp"

namespace thermoent {

void BipartiteCut::validate(const HilbertSpace& space) const {
  if (block_a.empty() || block_b.empty()) throw InvalidArgument("both sides of a cut must be nonempty");
  std::set<std::string> seen;
  for (const auto* block : {&block_a, &block_b}) {
    for (const auto& label : *block) {
      if (!space.contains(label)) throw InvalidArgument("cut label '" + label + "' is not in the space");
      if (!seen.insert(label).second) throw InvalidArgument("cut label '" + label + "' appears twice");
    }
  }
}

std::vector<std::string> BipartiteCut::labels(const HilbertSpace& space) const {
  std::set<std::string> wanted(block_a.begin(), block_a.end());
  wanted.insert(block_b.begin(), block_b.end());
  std::vector<std::string> out;
  for (const auto& label : space.labels()) {
    if (wanted.count(label)) out.push_back(label);
  }
  return out;
}

BipartiteCut cut_between(std::string a, std::string b) { return {{std::move(a)}, {std::move(b)}}; }

namespace {

double log_norm(double norm) {
  const double ln = std::log2(norm);
  if (ln >= 0.0) return ln;
  if (ln > -kNegativityClamp) return 0.0;
  throw NumericalError("partial transpose trace norm below 1; state is not normalised");
}

}  // namespace

double logarithmic_negativity(const DensityMatrix& rho, const BipartiteCut& cut) {
  cut.validate(rho.space());
  const std::vector<std::string> keep = cut.labels(rho.space());
  if (keep.size() == rho.space().size()) {
    return log_norm(trace_norm(partial_transpose(rho, cut.block_a)));
  }
  const DensityMatrix reduced = partial_trace(rho, keep);
  return log_norm(trace_norm(partial_transpose(reduced, cut.block_a)));
}

double logarithmic_negativity(const SparseMatrix& rho, const HilbertSpace& space,
                              const BipartiteCut& cut) {
  cut.validate(space);
  const std::vector<std::string> keep = cut.labels(space);
  if (keep.size() == space.size()) {
    return log_norm(trace_norm_hermitian(partial_transpose(rho, space, cut.block_a)));
  }
  const SparseMatrix reduced = partial_trace(rho, space, keep);
  return log_norm(
      trace_norm_hermitian(partial_transpose(reduced, space.restrict_to(keep), cut.block_a)));
}

double logarithmic_negativity(const SparseState& state, const BipartiteCut& cut) {
  cut.validate(state.space());
  const std::vector<std::string> keep = cut.labels(state.space());
  const SparseMatrix reduced = state.reduced(keep);
  const HilbertSpace sub = state.space().restrict_to(keep);
  return log_norm(trace_norm_hermitian(partial_transpose(reduced, sub, cut.block_a)));
}

// --- concurrence ------------------------------------------------------------

double concurrence(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw InvalidArgument("concurrence needs a two-qubit state");
  const Matrix yy = kron(pauli(Pauli::y), pauli(Pauli::y));
  const Matrix flipped = yy * rho.conjugate() * yy;

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed in concurrence");
  const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt_rho = es.eigenvectors() * roots.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  Matrix r = sqrt_rho * flipped * sqrt_rho;
  r = 0.5 * (r + r.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> rs(r, Eigen::EigenvaluesOnly);
  if (rs.info() != Eigen::Success) throw NumericalError("eigensolver failed in concurrence");
  std::vector<double> l(4);
  for (int k = 0; k < 4; ++k) l[k] = std::sqrt(std::max(0.0, rs.eigenvalues()(k)));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double concurrence(const DensityMatrix& rho) {
  for (const auto& s : rho.space().subsystems()) {
    if (s.kind != SubsystemKind::qubit) throw InvalidArgument("concurrence needs two qubits");
  }
  if (rho.space().size() != 2) throw InvalidArgument("concurrence needs two qubits");
  return concurrence(rho.matrix());
}

// --- entanglement potential -------------------------------------------------

namespace {

std::shared_ptr<const UnitaryPropagator> balanced_beamsplitter(int dim) {
  static std::mutex lock;
  static std::map<int, std::shared_ptr<const UnitaryPropagator>> cache;
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(dim);
  if (it != cache.end()) return it->second;

  const HilbertSpace space({{"a", dim, SubsystemKind::mode}, {"c", dim, SubsystemKind::mode}});
  const SparseMatrix a = embed_sparse(annihilation(dim), space, "a").matrix();
  const SparseMatrix c = embed_sparse(annihilation(dim), space, "c").matrix();
  const SparseMatrix cdag_a = SparseMatrix(c.adjoint()) * a;
  const SparseMatrix c_adag = c * SparseMatrix(a.adjoint());
  const SparseMatrix g = (cdag_a - c_adag) * Complex(0.0, std::numbers::pi / 4.0);
  auto prop = std::make_shared<const UnitaryPropagator>(space, g);
  cache.emplace(dim, prop);
  return prop;
}

}  // namespace

double entanglement_potential(const Matrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2) {
    throw InvalidArgument("entanglement potential needs a single-mode state of dim >= 2");
  }
  const int dim = static_cast<int>(rho.rows());
  const auto bs = balanced_beamsplitter(dim);
  const DensityMatrix input(HilbertSpace::mode("a", dim), rho);
  Matrix vacuum = Matrix::Zero(dim, dim);
  vacuum(0, 0) = 1.0;
  const Ensemble joint = Ensemble::product(
      {Ensemble::from_density(input), Ensemble::from_density(DensityMatrix(HilbertSpace::mode("c", dim), vacuum))});
  // rho_E = U^dagger (rho x |0><0|) U with U = exp(-i G), i.e. evolution to tau = -1.
  const BlockEnsemble mixed = bs->evolve(bs->prepare(joint), -1.0);
  return logarithmic_negativity(mixed, cut_between("a", "c"));
}

double entanglement_potential(const DensityMatrix& rho) {
  if (rho.space().size() != 1 || rho.space().subsystems()[0].kind != SubsystemKind::mode) {
    throw InvalidArgument("entanglement potential needs a single-mode state");
  }
  return entanglement_potential(rho.matrix());
}

// --- qubit diagnostics ------------------------------------------------------

namespace {

void require_qubit(const HilbertSpace& space, std::string_view qubit) {
  if (space.subsystem(qubit).kind != SubsystemKind::qubit) {
    throw InvalidArgument("'" + std::string(qubit) + "' is not a qubit");
  }
}

Matrix qubit_state(const SparseState& state, std::string_view qubit) {
  require_qubit(state.space(), qubit);
  return Matrix(state.reduced({std::string(qubit)}));
}

Matrix qubit_state(const DensityMatrix& rho, std::string_view qubit) {
  require_qubit(rho.space(), qubit);
  return partial_trace(rho.matrix(), rho.space(), {std::string(qubit)});
}

}  // namespace

double excited_population(const DensityMatrix& rho, std::string_view qubit) {
  return qubit_state(rho, qubit)(1, 1).real();
}

double excited_population(const SparseState& state, std::string_view qubit) {
  return qubit_state(state, qubit)(1, 1).real();
}

double ground_fidelity(const DensityMatrix& rho, std::string_view qubit) {
  return qubit_state(rho, qubit)(0, 0).real();
}

double ground_fidelity(const SparseState& state, std::string_view qubit) {
  return qubit_state(state, qubit)(0, 0).real();
}

double purity(const DensityMatrix& rho) { return rho.matrix().squaredNorm(); }

double purity(const SparseMatrix& rho) { return rho.squaredNorm(); }

}  // namespace thermoent

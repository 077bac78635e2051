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

#include "thermoent/operator_core.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include <unsupported/Eigen/KroneckerProduct>

#include "thermoent/errors.hpp"

namespace thermoent {

HilbertSpace::HilbertSpace(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
  std::unordered_set<std::string> seen;
  for (const auto& s : subsystems_) {
    if (s.label.empty()) throw InvalidArgument("subsystem label must be nonempty");
    if (!seen.insert(s.label).second) {
      throw InvalidArgument("duplicate subsystem label '" + s.label + "'");
    }
    if (s.kind == SubsystemKind::qubit && s.dim != 2) {
      throw InvalidArgument("qubit '" + s.label + "' must have dimension 2");
    }
    if (s.dim < 1) throw InvalidArgument("subsystem '" + s.label + "' has dimension < 1");
  }
  strides_.assign(subsystems_.size(), 1);
  total_dim_ = 1;
  for (std::size_t k = subsystems_.size(); k-- > 0;) {
    strides_[k] = total_dim_;
    total_dim_ *= subsystems_[k].dim;
  }
}

HilbertSpace HilbertSpace::qubit(std::string label) {
  return HilbertSpace({Subsystem{std::move(label), 2, SubsystemKind::qubit}});
}

HilbertSpace HilbertSpace::mode(std::string label, int dim) {
  if (dim < 2) throw InvalidArgument("mode dimension must be >= 2");
  return HilbertSpace({Subsystem{std::move(label), dim, SubsystemKind::mode}});
}

bool HilbertSpace::contains(std::string_view label) const {
  return std::any_of(subsystems_.begin(), subsystems_.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

std::size_t HilbertSpace::position(std::string_view label) const {
  for (std::size_t k = 0; k < subsystems_.size(); ++k) {
    if (subsystems_[k].label == label) return k;
  }
  throw InvalidArgument("unknown subsystem label '" + std::string(label) + "'");
}

const Subsystem& HilbertSpace::subsystem(std::string_view label) const {
  return subsystems_[position(label)];
}

std::vector<std::string> HilbertSpace::labels() const {
  std::vector<std::string> out;
  out.reserve(subsystems_.size());
  for (const auto& s : subsystems_) out.push_back(s.label);
  return out;
}

std::vector<int> HilbertSpace::dims() const {
  std::vector<int> out;
  out.reserve(subsystems_.size());
  for (const auto& s : subsystems_) out.push_back(s.dim);
  return out;
}

HilbertSpace HilbertSpace::tensor(const HilbertSpace& other) const {
  auto all = subsystems_;
  all.insert(all.end(), other.subsystems_.begin(), other.subsystems_.end());
  return HilbertSpace(std::move(all));
}

HilbertSpace HilbertSpace::restrict_to(const std::vector<std::string>& keep) const {
  if (keep.empty()) throw InvalidArgument("subspace must keep at least one subsystem");
  for (const auto& label : keep) position(label);
  std::vector<Subsystem> kept;
  for (const auto& s : subsystems_) {
    if (std::find(keep.begin(), keep.end(), s.label) != keep.end()) kept.push_back(s);
  }
  return HilbertSpace(std::move(kept));
}

// --- Operator ---------------------------------------------------------------

Operator::Operator(HilbertSpace space, Matrix data)
    : space_(std::move(space)), data_(std::move(data)) {
  if (data_.rows() != space_.total_dim() || data_.cols() != space_.total_dim()) {
    throw InvalidArgument("operator shape does not match space dimension " +
                          std::to_string(space_.total_dim()));
  }
}

Operator Operator::identity(const HilbertSpace& space) {
  return {space, Matrix::Identity(space.total_dim(), space.total_dim())};
}

Operator Operator::zero(const HilbertSpace& space) {
  return {space, Matrix::Zero(space.total_dim(), space.total_dim())};
}

double Operator::hermiticity_error() const { return thermoent::hermiticity_error(data_); }

namespace {
void require_same_space(const HilbertSpace& a, const HilbertSpace& b) {
  if (!(a == b)) throw InvalidArgument("operators live on different spaces");
}
}  // namespace

Operator Operator::operator+(const Operator& rhs) const {
  require_same_space(space_, rhs.space_);
  return {space_, data_ + rhs.data_};
}

Operator Operator::operator-(const Operator& rhs) const {
  require_same_space(space_, rhs.space_);
  return {space_, data_ - rhs.data_};
}

Operator Operator::operator*(const Operator& rhs) const {
  require_same_space(space_, rhs.space_);
  return {space_, data_ * rhs.data_};
}

// --- SparseOperator ---------------------------------------------------------

SparseOperator::SparseOperator(HilbertSpace space, SparseMatrix data)
    : space_(std::move(space)), data_(std::move(data)) {
  if (data_.rows() != space_.total_dim() || data_.cols() != space_.total_dim()) {
    throw InvalidArgument("operator shape does not match space dimension " +
                          std::to_string(space_.total_dim()));
  }
  data_.makeCompressed();
}

SparseOperator SparseOperator::zero(const HilbertSpace& space) {
  return {space, SparseMatrix(space.total_dim(), space.total_dim())};
}

SparseOperator SparseOperator::adjoint() const {
  return {space_, SparseMatrix(data_.adjoint())};
}

SparseOperator SparseOperator::operator+(const SparseOperator& rhs) const {
  require_same_space(space_, rhs.space_);
  return {space_, SparseMatrix(data_ + rhs.data_)};
}

SparseOperator SparseOperator::operator*(const SparseOperator& rhs) const {
  require_same_space(space_, rhs.space_);
  return {space_, SparseMatrix(data_ * rhs.data_)};
}

SparseOperator SparseOperator::operator*(Complex scale) const {
  return {space_, SparseMatrix(data_ * scale)};
}

// --- DensityMatrix ----------------------------------------------------------

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix data)
    : op_(std::move(space), std::move(data)) {
  const double herm = op_.hermiticity_error();
  if (herm > kHermiticityTolerance) {
    throw InvalidArgument("density matrix is not Hermitian (error " + std::to_string(herm) + ")");
  }
  const double tr = op_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw InvalidArgument("density matrix trace " + std::to_string(tr) + " != 1");
  }
  const double min_eig = min_eigenvalue_hermitian(op_.matrix());
  if (min_eig < kPositivityTolerance) {
    throw InvalidArgument("density matrix has negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::pure(HilbertSpace space, const Vector& amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw InvalidArgument("zero state vector");
  const Vector psi = amplitudes / norm;
  return {std::move(space), psi * psi.adjoint()};
}

// --- elementary operators ---------------------------------------------------

Matrix annihilation(int dim) {
  if (dim < 2) throw InvalidArgument("annihilation operator needs dimension >= 2");
  Matrix a = Matrix::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

Matrix creation(int dim) { return annihilation(dim).adjoint(); }

Matrix number_operator(int dim) {
  if (dim < 2) throw InvalidArgument("number operator needs dimension >= 2");
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Matrix pauli(Pauli which) {
  Matrix m = Matrix::Zero(2, 2);
  switch (which) {
    case Pauli::plus:
      m(1, 0) = 1.0;
      break;
    case Pauli::minus:
      m(0, 1) = 1.0;
      break;
    case Pauli::z:
      m(0, 0) = -1.0;
      m(1, 1) = 1.0;
      break;
    case Pauli::x:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Pauli::y:
      m(0, 1) = Complex(0.0, -1.0);
      m(1, 0) = Complex(0.0, 1.0);
      break;
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

namespace {

void check_local(const Matrix& local, const HilbertSpace& space, std::string_view label) {
  const auto& sub = space.subsystem(label);
  if (local.rows() != sub.dim || local.cols() != sub.dim) {
    throw InvalidArgument("operator of dimension " + std::to_string(local.rows()) +
                          " does not match subsystem '" + sub.label + "' of dimension " +
                          std::to_string(sub.dim));
  }
}

SparseMatrix sparse_identity(Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

}  // namespace

Operator embed(const Matrix& local, const HilbertSpace& space, std::string_view label) {
  check_local(local, space, label);
  const std::size_t pos = space.position(label);
  const Index left = space.total_dim() / (space.stride(pos) * local.rows());
  const Index right = space.stride(pos);
  Matrix out = kron(kron(Matrix::Identity(left, left), local), Matrix::Identity(right, right));
  return {space, std::move(out)};
}

SparseOperator embed_sparse(const Matrix& local, const HilbertSpace& space,
                            std::string_view label) {
  check_local(local, space, label);
  const std::size_t pos = space.position(label);
  const Index left = space.total_dim() / (space.stride(pos) * local.rows());
  const Index right = space.stride(pos);
  SparseMatrix local_sparse = local.sparseView();
  return {space, kron(kron(sparse_identity(left), local_sparse), sparse_identity(right))};
}

// --- partial trace / transpose ----------------------------------------------

namespace {

std::vector<bool> block_mask(const HilbertSpace& space, const std::vector<std::string>& block) {
  if (block.empty()) throw InvalidArgument("partial transpose block must be nonempty");
  std::vector<bool> mask(space.size(), false);
  for (const auto& label : block) mask[space.position(label)] = true;
  if (std::all_of(mask.begin(), mask.end(), [](bool b) { return b; })) {
    throw InvalidArgument("partial transpose block must be a proper subset of the subsystems");
  }
  return mask;
}

// Swaps the block digits of (row, col).
std::pair<Index, Index> transpose_pair(const HilbertSpace& space, const std::vector<bool>& mask,
                                       Index row, Index col) {
  Index r = row;
  Index c = col;
  for (std::size_t k = 0; k < space.size(); ++k) {
    if (!mask[k]) continue;
    const Index stride = space.stride(k);
    const Index dr = space.digit(row, k);
    const Index dc = space.digit(col, k);
    r += (dc - dr) * stride;
    c += (dr - dc) * stride;
  }
  return {r, c};
}

}  // namespace

Matrix partial_trace(const Matrix& m, const HilbertSpace& space,
                     const std::vector<std::string>& keep) {
  if (keep.empty()) throw InvalidArgument("partial trace must keep at least one subsystem");
  if (m.rows() != space.total_dim() || m.cols() != space.total_dim()) {
    throw InvalidArgument("matrix shape does not match space");
  }
  const IndexSplit s = split_indices(space, keep);
  // Group global indices by their traced-out index.
  std::vector<std::vector<Index>> by_rest(s.rest_dim);
  for (Index g = 0; g < space.total_dim(); ++g) by_rest[s.rest_index[g]].push_back(g);
  Matrix out = Matrix::Zero(s.keep_dim, s.keep_dim);
  for (const auto& group : by_rest) {
    for (Index i : group) {
      for (Index j : group) out(s.keep_index[i], s.keep_index[j]) += m(i, j);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  HilbertSpace reduced = rho.space().restrict_to(keep);
  Matrix out = partial_trace(rho.matrix(), rho.space(), keep);
  return {std::move(reduced), std::move(out)};
}

Matrix partial_transpose(const Matrix& m, const HilbertSpace& space,
                         const std::vector<std::string>& block) {
  const auto mask = block_mask(space, block);
  if (m.rows() != space.total_dim() || m.cols() != space.total_dim()) {
    throw InvalidArgument("matrix shape does not match space");
  }
  Matrix out(m.rows(), m.cols());
  for (Index col = 0; col < m.cols(); ++col) {
    for (Index row = 0; row < m.rows(); ++row) {
      const auto [r, c] = transpose_pair(space, mask, row, col);
      out(r, c) = m(row, col);
    }
  }
  return out;
}

SparseMatrix partial_transpose(const SparseMatrix& m, const HilbertSpace& space,
                               const std::vector<std::string>& block) {
  const auto mask = block_mask(space, block);
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (Index col = 0; col < m.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
      const auto [r, c] = transpose_pair(space, mask, it.row(), it.col());
      entries.emplace_back(r, c, it.value());
    }
  }
  SparseMatrix out(m.rows(), m.cols());
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

Operator partial_transpose(const DensityMatrix& rho, const std::vector<std::string>& block) {
  return {rho.space(), partial_transpose(rho.matrix(), rho.space(), block)};
}

IndexSplit split_indices(const HilbertSpace& space, const std::vector<std::string>& keep) {
  std::vector<bool> kept(space.size(), false);
  for (const auto& label : keep) kept[space.position(label)] = true;
  if (keep.empty()) throw InvalidArgument("partial trace must keep at least one subsystem");
  IndexSplit s;
  for (std::size_t k = 0; k < space.size(); ++k) {
    (kept[k] ? s.keep_dim : s.rest_dim) *= space.subsystems()[k].dim;
  }
  const Index n = space.total_dim();
  s.keep_index.resize(n);
  s.rest_index.resize(n);
  for (Index g = 0; g < n; ++g) {
    Index ki = 0;
    Index ri = 0;
    for (std::size_t k = 0; k < space.size(); ++k) {
      const int d = space.digit(g, k);
      if (kept[k]) {
        ki = ki * space.subsystems()[k].dim + d;
      } else {
        ri = ri * space.subsystems()[k].dim + d;
      }
    }
    s.keep_index[g] = ki;
    s.rest_index[g] = ri;
  }
  return s;
}

// --- norms and spectra ------------------------------------------------------

double hermiticity_error(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  return solver.eigenvalues().minCoeff();
}

double trace_norm_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  return solver.eigenvalues().cwiseAbs().sum();
}

double trace_norm_svd(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double trace_norm(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("trace norm needs a square matrix");
  if (hermiticity_error(m) <= 1e-12) return trace_norm_hermitian(m);
  return trace_norm_svd(m);
}

double trace_norm(const Operator& m) { return trace_norm(m.matrix()); }

}  // namespace thermoent

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

#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace thermoent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Index = Eigen::Index;

/// Validation tolerances for density matrices.
inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-8;
inline constexpr double kPositivityTolerance = -1e-8;

enum class SubsystemKind { qubit, mode };

struct Subsystem {
  std::string label;
  int dim = 2;
  SubsystemKind kind = SubsystemKind::mode;

  bool operator==(const Subsystem&) const = default;
};

/// Ordered tensor product of labeled subsystems. Composite indices are
/// row-major in declaration order: the first subsystem is the slowest digit.
class HilbertSpace {
 public:
  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<Subsystem> subsystems);

  static HilbertSpace qubit(std::string label);
  static HilbertSpace mode(std::string label, int dim);

  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  std::size_t size() const { return subsystems_.size(); }
  bool empty() const { return subsystems_.empty(); }
  Index total_dim() const { return total_dim_; }

  bool contains(std::string_view label) const;
  /// Position of `label` in declaration order; throws InvalidArgument if absent.
  std::size_t position(std::string_view label) const;
  const Subsystem& subsystem(std::string_view label) const;
  std::vector<std::string> labels() const;
  std::vector<int> dims() const;

  Index stride(std::size_t pos) const { return strides_[pos]; }
  int digit(Index index, std::size_t pos) const {
    return static_cast<int>((index / strides_[pos]) % subsystems_[pos].dim);
  }

  /// Concatenation; label collisions are an error.
  HilbertSpace tensor(const HilbertSpace& other) const;
  /// Subspace with the given labels, kept in this space's declaration order.
  HilbertSpace restrict_to(const std::vector<std::string>& keep) const;

  bool operator==(const HilbertSpace& other) const { return subsystems_ == other.subsystems_; }

 private:
  std::vector<Subsystem> subsystems_;
  std::vector<Index> strides_;
  Index total_dim_ = 1;
};

class Operator {
 public:
  Operator(HilbertSpace space, Matrix data);

  static Operator identity(const HilbertSpace& space);
  static Operator zero(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return data_; }
  Index dim() const { return data_.rows(); }

  Operator adjoint() const { return {space_, data_.adjoint()}; }
  Complex trace() const { return data_.trace(); }
  /// max |M - M^dagger| entrywise.
  double hermiticity_error() const;

  Operator operator+(const Operator& rhs) const;
  Operator operator-(const Operator& rhs) const;
  Operator operator*(const Operator& rhs) const;
  Operator operator*(Complex scale) const { return {space_, data_ * scale}; }

 private:
  HilbertSpace space_;
  Matrix data_;
};

/// Sparse counterpart of Operator, used to assemble Hamiltonians and jump
/// operators on spaces too large for dense storage.
class SparseOperator {
 public:
  SparseOperator(HilbertSpace space, SparseMatrix data);

  static SparseOperator zero(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const SparseMatrix& matrix() const { return data_; }
  Index dim() const { return data_.rows(); }

  SparseOperator adjoint() const;
  Operator to_dense() const { return {space_, Matrix(data_)}; }

  SparseOperator operator+(const SparseOperator& rhs) const;
  SparseOperator operator*(const SparseOperator& rhs) const;
  SparseOperator operator*(Complex scale) const;

 private:
  HilbertSpace space_;
  SparseMatrix data_;
};

/// Hermitian, unit-trace, positive semidefinite operator. Construction
/// validates all three properties.
class DensityMatrix {
 public:
  DensityMatrix(HilbertSpace space, Matrix data);

  static DensityMatrix pure(HilbertSpace space, const Vector& amplitudes);

  const HilbertSpace& space() const { return op_.space(); }
  const Matrix& matrix() const { return op_.matrix(); }
  const Operator& as_operator() const { return op_; }
  Index dim() const { return op_.dim(); }

 private:
  Operator op_;
};

enum class Pauli { plus, minus, z, x, y };

/// Truncated bosonic lowering operator: a(k-1, k) = sqrt(k).
Matrix annihilation(int dim);
Matrix creation(int dim);
Matrix number_operator(int dim);
/// Qubit operators in the (|g>, |e>) basis; sigma_plus |g> = |e>.
Matrix pauli(Pauli which);

Matrix kron(const Matrix& a, const Matrix& b);
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

/// `local` on the labeled subsystem, identity elsewhere.
Operator embed(const Matrix& local, const HilbertSpace& space, std::string_view label);
SparseOperator embed_sparse(const Matrix& local, const HilbertSpace& space,
                            std::string_view label);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);
/// Partial trace of an arbitrary square matrix over `space`; used by the
/// sparse/ensemble paths and by tests.
Matrix partial_trace(const Matrix& m, const HilbertSpace& space,
                     const std::vector<std::string>& keep);

/// Transposes the indices of the `block` subsystems only.
Operator partial_transpose(const DensityMatrix& rho, const std::vector<std::string>& block);
Matrix partial_transpose(const Matrix& m, const HilbertSpace& space,
                         const std::vector<std::string>& block);
SparseMatrix partial_transpose(const SparseMatrix& m, const HilbertSpace& space,
                               const std::vector<std::string>& block);

/// Sum of singular values. Hermitian input takes the eigenvalue path.
double trace_norm(const Operator& m);
double trace_norm(const Matrix& m);
double trace_norm_svd(const Matrix& m);
double trace_norm_hermitian(const Matrix& m);

double hermiticity_error(const Matrix& m);

/// Maps each composite index of `space` onto (kept index, traced index) for
/// the subsystems in `keep`.
struct IndexSplit {
  std::vector<Index> keep_index;
  std::vector<Index> rest_index;
  Index keep_dim = 1;
  Index rest_dim = 1;
};
IndexSplit split_indices(const HilbertSpace& space, const std::vector<std::string>& keep);
double min_eigenvalue_hermitian(const Matrix& m);

}  // namespace thermoent

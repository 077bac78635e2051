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

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "thermoent/operator_core.hpp"

namespace thermoent {

/// Partition of a basis into the connected components of a sparsity
/// pattern. Any operator whose pattern is contained in the partition's
/// generator is block diagonal in it, so spectra and exponentials can be
/// computed tile by tile.
class BlockPartition {
 public:
  BlockPartition() = default;

  /// Components of the undirected graph with an edge (i, j) for every
  /// nonzero entry of any of the given matrices. Blocks are ordered by
  /// their smallest member; members are ascending.
  static BlockPartition from_patterns(Index dim, const std::vector<const SparseMatrix*>& patterns);
  static BlockPartition from_pattern(const SparseMatrix& pattern);
  /// Single block covering [0, dim).
  static BlockPartition whole(Index dim);

  Index dim() const { return static_cast<Index>(block_of_.size()); }
  std::size_t num_blocks() const { return blocks_.size(); }
  const std::vector<Index>& block(std::size_t b) const { return blocks_[b]; }
  int block_of(Index global) const { return block_of_[static_cast<std::size_t>(global)]; }
  Index local_of(Index global) const { return local_of_[static_cast<std::size_t>(global)]; }
  std::size_t largest_block() const;

 private:
  std::vector<std::vector<Index>> blocks_;
  std::vector<int> block_of_;
  std::vector<Index> local_of_;
};

/// Tile (row_block, col_block) of a sparse matrix as a sparse local matrix.
using TileKey = std::pair<int, int>;
std::map<TileKey, SparseMatrix> sparse_tiles(const SparseMatrix& m, const BlockPartition& p);

/// Eigenvalues of a Hermitian sparse matrix, computed per connected
/// component of its own sparsity pattern. Sorted ascending.
std::vector<double> hermitian_eigenvalues(const SparseMatrix& m);
/// Sum of |eigenvalues| of a Hermitian sparse matrix, computed per component.
double trace_norm_hermitian(const SparseMatrix& m);

/// A state whose reduced density matrices can be formed without ever
/// materialising the full dense matrix.
class SparseState {
 public:
  virtual ~SparseState() = default;
  virtual const HilbertSpace& space() const = 0;
  /// Reduced density matrix on `keep` (declaration order of space()).
  virtual SparseMatrix reduced(const std::vector<std::string>& keep) const = 0;
};

/// Convex mixture of pure states sum_k w_k |psi_k><psi_k|.
class Ensemble {
 public:
  struct Component {
    double weight = 0.0;
    Vector amplitudes;
  };

  Ensemble(HilbertSpace space, std::vector<Component> components);

  /// Spectral ensemble of a dense state. Fock-diagonal inputs decompose into
  /// basis vectors; otherwise eigenvectors with weight above 1e-14 are kept.
  static Ensemble from_density(const DensityMatrix& rho);
  /// Tensor product of ensembles, in order.
  static Ensemble product(const std::vector<Ensemble>& parts);

  const HilbertSpace& space() const { return space_; }
  const std::vector<Component>& components() const { return components_; }
  Matrix to_dense() const;

 private:
  HilbertSpace space_;
  std::vector<Component> components_;
};

/// Ensemble stored per block of a partition: each component keeps only the
/// blocks on which it has support.
class BlockEnsemble : public SparseState {
 public:
  struct Piece {
    int block = 0;
    Vector amplitudes;
  };
  struct Component {
    double weight = 0.0;
    std::vector<Piece> pieces;
  };

  BlockEnsemble(HilbertSpace space, std::shared_ptr<const BlockPartition> partition,
                std::vector<Component> components);
  static BlockEnsemble from_ensemble(const Ensemble& e,
                                     std::shared_ptr<const BlockPartition> partition);

  const HilbertSpace& space() const override { return space_; }
  const BlockPartition& partition() const { return *partition_; }
  std::shared_ptr<const BlockPartition> partition_ptr() const { return partition_; }
  const std::vector<Component>& components() const { return components_; }

  SparseMatrix reduced(const std::vector<std::string>& keep) const override;
  Matrix to_dense() const;

 private:
  HilbertSpace space_;
  std::shared_ptr<const BlockPartition> partition_;
  std::vector<Component> components_;
};

/// Density matrix stored as dense tiles over a block partition; absent tiles
/// are zero.
class BlockDensity : public SparseState {
 public:
  using Tiles = std::map<TileKey, Matrix>;

  BlockDensity(HilbertSpace space, std::shared_ptr<const BlockPartition> partition, Tiles tiles);

  static BlockDensity from_dense(HilbertSpace space,
                                 std::shared_ptr<const BlockPartition> partition,
                                 const Matrix& rho);
  static BlockDensity from_ensemble(const BlockEnsemble& e);

  const HilbertSpace& space() const override { return space_; }
  const BlockPartition& partition() const { return *partition_; }
  std::shared_ptr<const BlockPartition> partition_ptr() const { return partition_; }
  const Tiles& tiles() const { return tiles_; }
  Tiles& tiles() { return tiles_; }

  Complex trace() const;
  SparseMatrix to_sparse() const;
  Matrix to_dense() const;
  SparseMatrix reduced(const std::vector<std::string>& keep) const override;

 private:
  HilbertSpace space_;
  std::shared_ptr<const BlockPartition> partition_;
  Tiles tiles_;
};

/// Reduced density matrix of a sparse full-space matrix.
SparseMatrix partial_trace(const SparseMatrix& m, const HilbertSpace& space,
                           const std::vector<std::string>& keep);

}  // namespace thermoent

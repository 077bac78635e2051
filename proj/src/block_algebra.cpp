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

#include "thermoent/block_algebra.hpp"

#include <algorithm>
#include <numeric>

#include "thermoent/errors.hpp"

namespace thermoent {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }
  Index find(Index x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<Index> parent_;
};

void partition_from_sets(DisjointSets& sets, Index dim, std::vector<std::vector<Index>>& blocks,
                         std::vector<int>& block_of, std::vector<Index>& local_of) {
  std::vector<int> root_block(static_cast<std::size_t>(dim), -1);
  block_of.assign(static_cast<std::size_t>(dim), -1);
  local_of.assign(static_cast<std::size_t>(dim), 0);
  for (Index g = 0; g < dim; ++g) {
    const Index root = sets.find(g);
    int& b = root_block[static_cast<std::size_t>(root)];
    if (b < 0) {
      b = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    block_of[g] = b;
    local_of[g] = static_cast<Index>(blocks[b].size());
    blocks[b].push_back(g);
  }
}

std::vector<Matrix> dense_components(const SparseMatrix& m, const BlockPartition& p) {
  std::vector<Matrix> out(p.num_blocks());
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    const auto n = static_cast<Index>(p.block(b).size());
    out[b] = Matrix::Zero(n, n);
  }
  for (Index col = 0; col < m.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
      const int b = p.block_of(it.row());
      out[b](p.local_of(it.row()), p.local_of(it.col())) += it.value();
    }
  }
  return out;
}

}  // namespace

BlockPartition BlockPartition::from_patterns(Index dim,
                                             const std::vector<const SparseMatrix*>& patterns) {
  DisjointSets sets(dim);
  for (const SparseMatrix* m : patterns) {
    if (m->rows() != dim || m->cols() != dim) {
      throw InvalidArgument("pattern dimension does not match partition dimension");
    }
    for (Index col = 0; col < m->outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(*m, col); it; ++it) {
        if (it.value() != Complex(0.0, 0.0)) sets.unite(it.row(), it.col());
      }
    }
  }
  BlockPartition p;
  partition_from_sets(sets, dim, p.blocks_, p.block_of_, p.local_of_);
  return p;
}

BlockPartition BlockPartition::from_pattern(const SparseMatrix& pattern) {
  return from_patterns(pattern.rows(), {&pattern});
}

BlockPartition BlockPartition::whole(Index dim) {
  BlockPartition p;
  p.blocks_.resize(1);
  p.blocks_[0].resize(static_cast<std::size_t>(dim));
  std::iota(p.blocks_[0].begin(), p.blocks_[0].end(), Index{0});
  p.block_of_.assign(static_cast<std::size_t>(dim), 0);
  p.local_of_ = p.blocks_[0];
  return p;
}

std::size_t BlockPartition::largest_block() const {
  std::size_t best = 0;
  for (const auto& b : blocks_) best = std::max(best, b.size());
  return best;
}

std::map<TileKey, SparseMatrix> sparse_tiles(const SparseMatrix& m, const BlockPartition& p) {
  std::map<TileKey, std::vector<Eigen::Triplet<Complex>>> entries;
  for (Index col = 0; col < m.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
      if (it.value() == Complex(0.0, 0.0)) continue;
      const TileKey key{p.block_of(it.row()), p.block_of(it.col())};
      entries[key].emplace_back(p.local_of(it.row()), p.local_of(it.col()), it.value());
    }
  }
  std::map<TileKey, SparseMatrix> out;
  for (auto& [key, triplets] : entries) {
    SparseMatrix tile(static_cast<Index>(p.block(key.first).size()),
                      static_cast<Index>(p.block(key.second).size()));
    tile.setFromTriplets(triplets.begin(), triplets.end());
    out.emplace(key, std::move(tile));
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const SparseMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("eigenvalues need a square matrix");
  const BlockPartition p = BlockPartition::from_pattern(m);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (const Matrix& block : dense_components(m, p)) {
    if (block.rows() == 1) {
      out.push_back(block(0, 0).real());
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(block, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
    for (Index k = 0; k < solver.eigenvalues().size(); ++k) out.push_back(solver.eigenvalues()(k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double trace_norm_hermitian(const SparseMatrix& m) {
  double total = 0.0;
  for (double e : hermitian_eigenvalues(m)) total += std::abs(e);
  return total;
}

// --- Ensemble ---------------------------------------------------------------

Ensemble::Ensemble(HilbertSpace space, std::vector<Component> components)
    : space_(std::move(space)), components_(std::move(components)) {
  for (const auto& c : components_) {
    if (c.amplitudes.size() != space_.total_dim()) {
      throw InvalidArgument("ensemble component has wrong dimension");
    }
    if (c.weight < 0.0) throw InvalidArgument("ensemble weights must be nonnegative");
  }
}

Ensemble Ensemble::from_density(const DensityMatrix& rho) {
  const Matrix& m = rho.matrix();
  const Index n = m.rows();
  std::vector<Component> comps;
  const bool diagonal = (m - Matrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
  if (diagonal) {
    for (Index k = 0; k < n; ++k) {
      const double w = m(k, k).real();
      if (w <= 0.0) continue;
      comps.push_back({w, Vector::Unit(n, k)});
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
    // Largest weights first so pure states come out as a single component.
    for (Index k = n; k-- > 0;) {
      const double w = solver.eigenvalues()(k);
      if (w <= 1e-14) continue;
      comps.push_back({w, solver.eigenvectors().col(k)});
    }
  }
  return {rho.space(), std::move(comps)};
}

Ensemble Ensemble::product(const std::vector<Ensemble>& parts) {
  if (parts.empty()) throw InvalidArgument("product of an empty list of states");
  HilbertSpace space = parts.front().space();
  std::vector<Component> acc = parts.front().components();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    space = space.tensor(parts[k].space());
    std::vector<Component> next;
    next.reserve(acc.size() * parts[k].components().size());
    for (const auto& a : acc) {
      for (const auto& b : parts[k].components()) {
        next.push_back({a.weight * b.weight, kron(Matrix(a.amplitudes), Matrix(b.amplitudes))});
      }
    }
    acc = std::move(next);
  }
  return {std::move(space), std::move(acc)};
}

Matrix Ensemble::to_dense() const {
  const Index n = space_.total_dim();
  Matrix out = Matrix::Zero(n, n);
  for (const auto& c : components_) out.noalias() += c.weight * c.amplitudes * c.amplitudes.adjoint();
  return out;
}

// --- BlockEnsemble ----------------------------------------------------------

BlockEnsemble::BlockEnsemble(HilbertSpace space, std::shared_ptr<const BlockPartition> partition,
                             std::vector<Component> components)
    : space_(std::move(space)), partition_(std::move(partition)), components_(std::move(components)) {
  if (partition_->dim() != space_.total_dim()) {
    throw InvalidArgument("partition dimension does not match space");
  }
}

BlockEnsemble BlockEnsemble::from_ensemble(const Ensemble& e,
                                           std::shared_ptr<const BlockPartition> partition) {
  const BlockPartition& p = *partition;
  std::vector<Component> comps;
  comps.reserve(e.components().size());
  for (const auto& c : e.components()) {
    Component out{c.weight, {}};
    std::map<int, Vector> pieces;
    for (Index g = 0; g < c.amplitudes.size(); ++g) {
      if (c.amplitudes(g) == Complex(0.0, 0.0)) continue;
      const int b = p.block_of(g);
      auto it = pieces.find(b);
      if (it == pieces.end()) {
        it = pieces.emplace(b, Vector::Zero(static_cast<Index>(p.block(b).size()))).first;
      }
      it->second(p.local_of(g)) = c.amplitudes(g);
    }
    for (auto& [b, v] : pieces) out.pieces.push_back({b, std::move(v)});
    comps.push_back(std::move(out));
  }
  return {e.space(), std::move(partition), std::move(comps)};
}

SparseMatrix BlockEnsemble::reduced(const std::vector<std::string>& keep) const {
  const IndexSplit split = split_indices(space_, keep);
  struct Entry {
    Index rest;
    Index keep;
    Complex amp;
  };
  std::vector<Eigen::Triplet<Complex>> triplets;
  std::vector<Entry> entries;
  for (const auto& comp : components_) {
    entries.clear();
    for (const auto& piece : comp.pieces) {
      const auto& members = partition_->block(static_cast<std::size_t>(piece.block));
      for (Index l = 0; l < piece.amplitudes.size(); ++l) {
        const Complex a = piece.amplitudes(l);
        if (a == Complex(0.0, 0.0)) continue;
        const Index g = members[static_cast<std::size_t>(l)];
        entries.push_back({split.rest_index[g], split.keep_index[g], a});
      }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& x, const Entry& y) { return x.rest < y.rest; });
    for (std::size_t lo = 0; lo < entries.size();) {
      std::size_t hi = lo;
      while (hi < entries.size() && entries[hi].rest == entries[lo].rest) ++hi;
      for (std::size_t i = lo; i < hi; ++i) {
        const Complex wi = comp.weight * entries[i].amp;
        for (std::size_t j = lo; j < hi; ++j) {
          triplets.emplace_back(entries[i].keep, entries[j].keep, wi * std::conj(entries[j].amp));
        }
      }
      lo = hi;
    }
  }
  SparseMatrix out(split.keep_dim, split.keep_dim);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Matrix BlockEnsemble::to_dense() const {
  const Index n = space_.total_dim();
  Matrix out = Matrix::Zero(n, n);
  for (const auto& comp : components_) {
    Vector psi = Vector::Zero(n);
    for (const auto& piece : comp.pieces) {
      const auto& members = partition_->block(static_cast<std::size_t>(piece.block));
      for (Index l = 0; l < piece.amplitudes.size(); ++l) psi(members[l]) = piece.amplitudes(l);
    }
    out.noalias() += comp.weight * psi * psi.adjoint();
  }
  return out;
}

// --- BlockDensity -----------------------------------------------------------

BlockDensity::BlockDensity(HilbertSpace space, std::shared_ptr<const BlockPartition> partition,
                           Tiles tiles)
    : space_(std::move(space)), partition_(std::move(partition)), tiles_(std::move(tiles)) {
  if (partition_->dim() != space_.total_dim()) {
    throw InvalidArgument("partition dimension does not match space");
  }
}

BlockDensity BlockDensity::from_dense(HilbertSpace space,
                                      std::shared_ptr<const BlockPartition> partition,
                                      const Matrix& rho) {
  const BlockPartition& p = *partition;
  Tiles tiles;
  for (std::size_t bi = 0; bi < p.num_blocks(); ++bi) {
    for (std::size_t bj = 0; bj < p.num_blocks(); ++bj) {
      const auto& rows = p.block(bi);
      const auto& cols = p.block(bj);
      Matrix tile(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
      bool nonzero = false;
      for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
          tile(r, c) = rho(rows[r], cols[c]);
          nonzero = nonzero || tile(r, c) != Complex(0.0, 0.0);
        }
      }
      if (nonzero) tiles.emplace(TileKey{static_cast<int>(bi), static_cast<int>(bj)}, std::move(tile));
    }
  }
  return {std::move(space), std::move(partition), std::move(tiles)};
}

BlockDensity BlockDensity::from_ensemble(const BlockEnsemble& e) {
  const BlockPartition& p = e.partition();
  Tiles tiles;
  for (const auto& comp : e.components()) {
    for (const auto& a : comp.pieces) {
      for (const auto& b : comp.pieces) {
        const TileKey key{a.block, b.block};
        auto it = tiles.find(key);
        if (it == tiles.end()) {
          it = tiles
                   .emplace(key, Matrix::Zero(static_cast<Index>(p.block(a.block).size()),
                                              static_cast<Index>(p.block(b.block).size())))
                   .first;
        }
        it->second.noalias() += comp.weight * a.amplitudes * b.amplitudes.adjoint();
      }
    }
  }
  return {e.space(), e.partition_ptr(), std::move(tiles)};
}

Complex BlockDensity::trace() const {
  Complex total(0.0, 0.0);
  for (const auto& [key, tile] : tiles_) {
    if (key.first == key.second) total += tile.trace();
  }
  return total;
}

SparseMatrix BlockDensity::to_sparse() const {
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (const auto& [key, tile] : tiles_) {
    const auto& rows = partition_->block(static_cast<std::size_t>(key.first));
    const auto& cols = partition_->block(static_cast<std::size_t>(key.second));
    for (Index c = 0; c < tile.cols(); ++c) {
      for (Index r = 0; r < tile.rows(); ++r) {
        if (tile(r, c) != Complex(0.0, 0.0)) triplets.emplace_back(rows[r], cols[c], tile(r, c));
      }
    }
  }
  SparseMatrix out(space_.total_dim(), space_.total_dim());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Matrix BlockDensity::to_dense() const { return Matrix(to_sparse()); }

SparseMatrix BlockDensity::reduced(const std::vector<std::string>& keep) const {
  return partial_trace(to_sparse(), space_, keep);
}

SparseMatrix partial_trace(const SparseMatrix& m, const HilbertSpace& space,
                           const std::vector<std::string>& keep) {
  if (m.rows() != space.total_dim() || m.cols() != space.total_dim()) {
    throw InvalidArgument("matrix shape does not match space");
  }
  const IndexSplit split = split_indices(space, keep);
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (Index col = 0; col < m.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
      if (split.rest_index[it.row()] != split.rest_index[it.col()]) continue;
      triplets.emplace_back(split.keep_index[it.row()], split.keep_index[it.col()], it.value());
    }
  }
  SparseMatrix out(split.keep_dim, split.keep_dim);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

}  // namespace thermoent

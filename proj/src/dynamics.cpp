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

#include "thermoent/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <limits>
#include <sstream>

#include "thermoent/errors.hpp"
#include "thermoent/states.hpp"

namespace thermoent {

void TimeGrid::validate() const {
  if (!std::isfinite(start) || !std::isfinite(end)) throw InvalidArgument("time grid must be finite");
  if (!(end > start)) throw InvalidArgument("time grid end must exceed its start");
  if (samples < 2) throw InvalidArgument("time grid needs at least 2 samples");
}

std::vector<double> TimeGrid::times() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(samples));
  const double span = end - start;
  for (int k = 0; k < samples; ++k) {
    out[static_cast<std::size_t>(k)] = start + span * static_cast<double>(k) / (samples - 1);
  }
  out.back() = end;
  return out;
}

int choose_dimension(double nbar_max, double epsilon, int guard) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (!(nbar_max >= 0.0) || !std::isfinite(nbar_max)) throw InvalidArgument("nbar must be >= 0");
  int dim = 2;
  while (thermal_tail(nbar_max, dim) >= epsilon) ++dim;
  return dim + guard;
}

int choose_dimension_poisson(double mean, double epsilon, int guard) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw InvalidArgument("mean must be >= 0");
  int dim = 2;
  while (poisson_tail(mean, dim) >= epsilon) ++dim;
  return dim + guard;
}

// --- baths ------------------------------------------------------------------

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::qubit_dephasing:
      return "qubit_dephasing";
    case ChannelKind::qubit_relaxation:
      return "qubit_relaxation";
    case ChannelKind::mode_damping:
      return "mode_damping";
  }
  return "?";
}

ChannelKind parse_channel_kind(std::string_view text) {
  for (ChannelKind k :
       {ChannelKind::qubit_dephasing, ChannelKind::qubit_relaxation, ChannelKind::mode_damping}) {
    if (to_string(k) == text) return k;
  }
  throw InvalidArgument("unknown bath channel '" + std::string(text) + "'");
}

void BathSpec::validate() const {
  for (const auto& c : channels) {
    if (!(c.rate >= 0.0) || !std::isfinite(c.rate)) throw InvalidArgument("bath rates must be >= 0");
    if (!(c.occupancy >= 0.0) || !std::isfinite(c.occupancy)) {
      throw InvalidArgument("bath occupancies must be >= 0");
    }
  }
}

bool BathSpec::empty() const {
  return std::all_of(channels.begin(), channels.end(),
                     [](const BathChannel& c) { return c.rate == 0.0; });
}

std::vector<SparseOperator> lindblad_jumps(const BathSpec& bath, const HilbertSpace& space) {
  bath.validate();
  std::vector<SparseOperator> out;
  for (const auto& c : bath.channels) {
    const Subsystem& sub = space.subsystem(c.target);
    const bool wants_qubit = c.kind != ChannelKind::mode_damping;
    if (wants_qubit != (sub.kind == SubsystemKind::qubit)) {
      throw InvalidArgument("channel " + std::string(to_string(c.kind)) +
                            " cannot act on subsystem '" + c.target + "'");
    }
    if (c.rate == 0.0) continue;
    auto add = [&](const Matrix& local, double strength) {
      if (strength > 0.0) out.push_back(embed_sparse(local, space, c.target) * Complex(std::sqrt(strength), 0.0));
    };
    switch (c.kind) {
      case ChannelKind::qubit_dephasing:
        add(pauli(Pauli::z), c.rate);
        break;
      case ChannelKind::qubit_relaxation:
        add(pauli(Pauli::minus), c.rate * (1.0 + c.occupancy));
        add(pauli(Pauli::plus), c.rate * c.occupancy);
        break;
      case ChannelKind::mode_damping:
        add(annihilation(sub.dim), c.rate * (1.0 + c.occupancy));
        add(creation(sub.dim), c.rate * c.occupancy);
        break;
    }
  }
  return out;
}

// --- closed evolution -------------------------------------------------------

namespace {

double sparse_hermiticity_error(const SparseMatrix& h) {
  const SparseMatrix diff = h - SparseMatrix(h.adjoint());
  double worst = 0.0;
  for (Index col = 0; col < diff.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(diff, col); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

Matrix dense_block(const SparseMatrix& m, const std::vector<Index>& rows,
                   const std::vector<Index>& cols, const BlockPartition& p, int row_block) {
  Matrix out = Matrix::Zero(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (Index c = 0; c < static_cast<Index>(cols.size()); ++c) {
    for (SparseMatrix::InnerIterator it(m, cols[c]); it; ++it) {
      if (p.block_of(it.row()) != row_block) continue;
      out(p.local_of(it.row()), c) += it.value();
    }
  }
  return out;
}

BlockDensity::Tiles retile(const SparseMatrix& rho, const BlockPartition& p) {
  BlockDensity::Tiles tiles;
  for (Index col = 0; col < rho.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(rho, col); it; ++it) {
      if (it.value() == Complex(0.0, 0.0)) continue;
      const TileKey key{p.block_of(it.row()), p.block_of(it.col())};
      auto t = tiles.find(key);
      if (t == tiles.end()) {
        t = tiles
                .emplace(key, Matrix::Zero(static_cast<Index>(p.block(key.first).size()),
                                           static_cast<Index>(p.block(key.second).size())))
                .first;
      }
      t->second(p.local_of(it.row()), p.local_of(it.col())) = it.value();
    }
  }
  return tiles;
}

Vector phases(const Eigen::VectorXd& energies, double tau) {
  Vector out(energies.size());
  for (Index k = 0; k < energies.size(); ++k) out(k) = std::polar(1.0, -energies(k) * tau);
  return out;
}

}  // namespace

UnitaryPropagator::UnitaryPropagator(HilbertSpace space, const SparseMatrix& h)
    : space_(std::move(space)) {
  if (h.rows() != space_.total_dim() || h.cols() != space_.total_dim()) {
    throw InvalidArgument("Hamiltonian shape does not match space");
  }
  if (sparse_hermiticity_error(h) > kHermiticityTolerance) {
    throw InvalidArgument("Hamiltonian is not Hermitian");
  }
  partition_ = std::make_shared<const BlockPartition>(BlockPartition::from_pattern(h));
  const BlockPartition& p = *partition_;
  blocks_.resize(p.num_blocks());
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    const auto& members = p.block(b);
    const Matrix local = dense_block(h, members, members, p, static_cast<int>(b));
    if (local.rows() == 1) {
      blocks_[b].values = Eigen::VectorXd::Constant(1, local(0, 0).real());
      blocks_[b].vectors = Matrix::Identity(1, 1);
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(local);
    if (solver.info() != Eigen::Success) throw NumericalError("Hamiltonian eigendecomposition failed");
    blocks_[b].values = solver.eigenvalues();
    blocks_[b].vectors = solver.eigenvectors();
  }
}

UnitaryPropagator::UnitaryPropagator(const SparseOperator& h)
    : UnitaryPropagator(h.space(), h.matrix()) {}

UnitaryPropagator::UnitaryPropagator(const Operator& h)
    : UnitaryPropagator(h.space(), SparseMatrix(h.matrix().sparseView())) {}

BlockEnsemble UnitaryPropagator::prepare(const Ensemble& e) const {
  if (!(e.space() == space_)) throw InvalidArgument("state space does not match the Hamiltonian");
  return BlockEnsemble::from_ensemble(e, partition_);
}

BlockEnsemble UnitaryPropagator::evolve(const BlockEnsemble& e, double tau) const {
  if (e.partition_ptr() != partition_) throw InvalidArgument("ensemble was prepared for another propagator");
  std::vector<BlockEnsemble::Component> comps = e.components();
  for (auto& comp : comps) {
    for (auto& piece : comp.pieces) {
      const Eigensystem& sys = blocks_[static_cast<std::size_t>(piece.block)];
      const Vector c = sys.vectors.adjoint() * piece.amplitudes;
      piece.amplitudes = sys.vectors * phases(sys.values, tau).cwiseProduct(c);
    }
  }
  return {space_, partition_, std::move(comps)};
}

BlockDensity UnitaryPropagator::evolve(const BlockDensity& rho, double tau) const {
  BlockDensity::Tiles tiles = rho.partition_ptr() == partition_
                                  ? rho.tiles()
                                  : retile(rho.to_sparse(), *partition_);
  for (auto& [key, tile] : tiles) {
    const Eigensystem& a = blocks_[static_cast<std::size_t>(key.first)];
    const Eigensystem& b = blocks_[static_cast<std::size_t>(key.second)];
    const Matrix u_a = a.vectors * phases(a.values, tau).asDiagonal() * a.vectors.adjoint();
    const Matrix u_b = b.vectors * phases(b.values, tau).asDiagonal() * b.vectors.adjoint();
    tile = u_a * tile * u_b.adjoint();
  }
  return {space_, partition_, std::move(tiles)};
}

Matrix UnitaryPropagator::evolve(const Matrix& rho, double tau) const {
  if (rho.rows() != space_.total_dim() || rho.cols() != space_.total_dim()) {
    throw InvalidArgument("state shape does not match the Hamiltonian");
  }
  BlockDensity d(space_, partition_, retile(SparseMatrix(rho.sparseView(0.0, 0.0)), *partition_));
  return evolve(d, tau).to_dense();
}

UnitaryTrajectory::UnitaryTrajectory(std::shared_ptr<const UnitaryPropagator> propagator,
                                     const Ensemble& initial)
    : propagator_(std::move(propagator)) {
  const BlockEnsemble prepared = propagator_->prepare(initial);
  const BlockPartition& p = *propagator_->partition();

  double ensemble_cost = 0.0;
  std::set<TileKey> keys;
  for (const auto& comp : prepared.components()) {
    double support = 0.0;
    for (const auto& piece : comp.pieces) support += static_cast<double>(piece.amplitudes.size());
    ensemble_cost += support * support;
    for (const auto& a : comp.pieces) {
      for (const auto& b : comp.pieces) keys.insert({a.block, b.block});
    }
  }
  double tile_cost = 0.0;
  for (const auto& [i, j] : keys) {
    const double si = static_cast<double>(p.block(i).size());
    const double sj = static_cast<double>(p.block(j).size());
    tile_cost += si * sj * (si + sj);
  }
  use_tiles_ = tile_cost < ensemble_cost;

  for (const auto& comp : prepared.components()) {
    std::vector<Coefficients> coeffs;
    for (const auto& piece : comp.pieces) {
      const Matrix& v = propagator_->eigenvectors(static_cast<std::size_t>(piece.block));
      coeffs.push_back({piece.block, v.adjoint() * piece.amplitudes});
    }
    if (use_tiles_) {
      for (const auto& a : coeffs) {
        for (const auto& b : coeffs) {
          auto it = eigen_tiles_.find({a.block, b.block});
          if (it == eigen_tiles_.end()) {
            it = eigen_tiles_
                     .emplace(TileKey{a.block, b.block},
                              Matrix::Zero(a.coeffs.size(), b.coeffs.size()))
                     .first;
          }
          it->second.noalias() += comp.weight * a.coeffs * b.coeffs.adjoint();
        }
      }
    } else {
      weights_.push_back(comp.weight);
      components_.push_back(std::move(coeffs));
    }
  }
}

const SparseState& UnitaryTrajectory::at(double tau) {
  const UnitaryPropagator& u = *propagator_;
  if (use_tiles_) {
    BlockDensity::Tiles tiles;
    for (const auto& [key, r] : eigen_tiles_) {
      const auto a = static_cast<std::size_t>(key.first);
      const auto b = static_cast<std::size_t>(key.second);
      const Vector pa = phases(u.eigenvalues(a), tau);
      const Vector pb = phases(u.eigenvalues(b), tau);
      const Matrix rotated = pa.asDiagonal() * r * pb.conjugate().asDiagonal();
      tiles.emplace(key, u.eigenvectors(a) * rotated * u.eigenvectors(b).adjoint());
    }
    density_ = std::make_unique<BlockDensity>(u.space(), u.partition(), std::move(tiles));
    return *density_;
  }
  std::vector<BlockEnsemble::Component> comps;
  comps.reserve(components_.size());
  for (std::size_t c = 0; c < components_.size(); ++c) {
    BlockEnsemble::Component comp{weights_[c], {}};
    for (const auto& piece : components_[c]) {
      const auto b = static_cast<std::size_t>(piece.block);
      comp.pieces.push_back(
          {piece.block, u.eigenvectors(b) * phases(u.eigenvalues(b), tau).cwiseProduct(piece.coeffs)});
    }
    comps.push_back(std::move(comp));
  }
  ensemble_ = std::make_unique<BlockEnsemble>(u.space(), u.partition(), std::move(comps));
  return *ensemble_;
}

std::vector<DensityMatrix> evolve_unitary(const Operator& h, const DensityMatrix& rho0,
                                          const TimeGrid& grid) {
  if (!(h.space() == rho0.space())) throw InvalidArgument("Hamiltonian and state spaces differ");
  const UnitaryPropagator u(h);
  std::vector<DensityMatrix> out;
  for (double tau : grid.times()) out.emplace_back(rho0.space(), u.evolve(rho0.matrix(), tau));
  return out;
}

// --- open evolution ---------------------------------------------------------

struct LindbladPropagator::TileSet {
  std::vector<TileKey> keys;
  std::vector<Matrix> data;
  std::map<TileKey, std::size_t> index;

  void axpy(double a, const TileSet& x) {
    for (std::size_t k = 0; k < data.size(); ++k) data[k] += a * x.data[k];
  }
};

namespace {

double max_row_sum(const SparseMatrix& m) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(m.rows());
  for (Index col = 0; col < m.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) rows(it.row()) += std::abs(it.value());
  }
  return rows.size() == 0 ? 0.0 : rows.maxCoeff();
}

}  // namespace

LindbladPropagator::LindbladPropagator(HilbertSpace space, const SparseMatrix& h,
                                       const std::vector<SparseMatrix>& jumps)
    : space_(std::move(space)) {
  const Index n = space_.total_dim();
  if (h.rows() != n || h.cols() != n) throw InvalidArgument("Hamiltonian shape does not match space");
  if (sparse_hermiticity_error(h) > kHermiticityTolerance) {
    throw InvalidArgument("Hamiltonian is not Hermitian");
  }
  SparseMatrix k(n, n);
  for (const SparseMatrix& l : jumps) {
    if (l.rows() != n || l.cols() != n) throw InvalidArgument("jump operator shape does not match space");
    k += SparseMatrix(l.adjoint()) * l;
  }
  partition_ = std::make_shared<const BlockPartition>(BlockPartition::from_patterns(n, {&h, &k}));
  const BlockPartition& p = *partition_;

  drift_.resize(p.num_blocks());
  const SparseMatrix a = h * Complex(0.0, -1.0) + k * Complex(-0.5, 0.0);
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    drift_[b] = dense_block(a, p.block(b), p.block(b), p, static_cast<int>(b));
  }
  jumps_.resize(jumps.size());
  for (std::size_t l = 0; l < jumps.size(); ++l) {
    jumps_[l].resize(p.num_blocks());
    for (auto& [key, tile] : sparse_tiles(jumps[l], p)) {
      jumps_[l][static_cast<std::size_t>(key.second)].push_back(
          {key.first, tile, SparseMatrix(tile.adjoint())});
    }
  }
  norm_bound_ = max_row_sum(h) + 2.0 * max_row_sum(k);
}

LindbladPropagator::LindbladPropagator(const SparseOperator& h,
                                       const std::vector<SparseOperator>& jumps)
    : LindbladPropagator(h.space(), h.matrix(), [&] {
        std::vector<SparseMatrix> out;
        for (const auto& l : jumps) {
          if (!(l.space() == h.space())) throw InvalidArgument("jump operator lives on another space");
          out.push_back(l.matrix());
        }
        return out;
      }()) {}

BlockDensity LindbladPropagator::prepare(const Ensemble& e) const {
  if (!(e.space() == space_)) throw InvalidArgument("state space does not match the generator");
  return BlockDensity::from_ensemble(BlockEnsemble::from_ensemble(e, partition_));
}

BlockDensity LindbladPropagator::prepare(const Matrix& rho) const {
  if (rho.rows() != space_.total_dim()) throw InvalidArgument("state shape does not match the generator");
  return {space_, partition_, retile(SparseMatrix(rho.sparseView(0.0, 0.0)), *partition_)};
}

std::vector<TileKey> LindbladPropagator::closure(const BlockDensity::Tiles& seed) const {
  std::set<TileKey> seen;
  std::deque<TileKey> queue;
  for (const auto& [key, tile] : seed) {
    if (seen.insert(key).second) queue.push_back(key);
  }
  while (!queue.empty()) {
    const TileKey key = queue.front();
    queue.pop_front();
    for (const auto& jump : jumps_) {
      for (const JumpTile& left : jump[static_cast<std::size_t>(key.first)]) {
        for (const JumpTile& right : jump[static_cast<std::size_t>(key.second)]) {
          const TileKey next{left.row_block, right.row_block};
          if (seen.insert(next).second) queue.push_back(next);
        }
      }
    }
  }
  return {seen.begin(), seen.end()};
}

void LindbladPropagator::derivative(const TileSet& x, TileSet& out) const {
  for (std::size_t t = 0; t < x.keys.size(); ++t) {
    const auto [i, j] = x.keys[t];
    const Matrix& xt = x.data[t];
    out.data[t].noalias() = drift_[static_cast<std::size_t>(i)] * xt;
    out.data[t].noalias() += xt * drift_[static_cast<std::size_t>(j)].adjoint();
  }
  for (std::size_t t = 0; t < x.keys.size(); ++t) {
    const auto [i, j] = x.keys[t];
    const Matrix& xt = x.data[t];
    for (const auto& jump : jumps_) {
      const auto& lefts = jump[static_cast<std::size_t>(i)];
      const auto& rights = jump[static_cast<std::size_t>(j)];
      if (lefts.empty() || rights.empty()) continue;
      for (const JumpTile& left : lefts) {
        const Matrix lx = left.tile * xt;
        for (const JumpTile& right : rights) {
          const std::size_t target = x.index.at({left.row_block, right.row_block});
          out.data[target].noalias() += lx * right.tile_adjoint;
        }
      }
    }
  }
}

void LindbladPropagator::rk4(TileSet& x, double h, long steps) const {
  TileSet k1 = x, k2 = x, k3 = x, k4 = x, stage = x;
  for (long s = 0; s < steps; ++s) {
    derivative(x, k1);
    stage.data = x.data;
    stage.axpy(0.5 * h, k1);
    derivative(stage, k2);
    stage.data = x.data;
    stage.axpy(0.5 * h, k2);
    derivative(stage, k3);
    stage.data = x.data;
    stage.axpy(h, k3);
    derivative(stage, k4);
    for (std::size_t t = 0; t < x.data.size(); ++t) {
      x.data[t] += (h / 6.0) * (k1.data[t] + 2.0 * k2.data[t] + 2.0 * k3.data[t] + k4.data[t]);
    }
  }
}

StepReport LindbladPropagator::run(const BlockDensity& rho0, const std::vector<double>& times,
                                   const StepControl& control, const Probe& probe,
                                   const SampleVisitor& visit) const {
  if (times.empty()) throw InvalidArgument("no sample times");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw InvalidArgument("sample times must increase");
  }
  if (!(control.tolerance > 0.0)) throw InvalidArgument("step tolerance must be positive");

  const BlockDensity::Tiles seed = rho0.partition_ptr() == partition_
                                       ? rho0.tiles()
                                       : retile(rho0.to_sparse(), *partition_);
  TileSet x;
  x.keys = closure(seed);
  for (std::size_t t = 0; t < x.keys.size(); ++t) {
    const auto [i, j] = x.keys[t];
    x.index[x.keys[t]] = t;
    auto it = seed.find(x.keys[t]);
    x.data.push_back(it != seed.end()
                         ? it->second
                         : Matrix::Zero(static_cast<Index>(partition_->block(i).size()),
                                        static_cast<Index>(partition_->block(j).size())));
  }
  auto as_density = [&](const TileSet& s) {
    BlockDensity::Tiles tiles;
    for (std::size_t t = 0; t < s.keys.size(); ++t) tiles.emplace(s.keys[t], s.data[t]);
    return BlockDensity(space_, partition_, std::move(tiles));
  };
  auto trace_of = [&](const TileSet& s) {
    Complex tr(0.0, 0.0);
    for (std::size_t t = 0; t < s.keys.size(); ++t) {
      if (s.keys[t].first == s.keys[t].second) tr += s.data[t].trace();
    }
    return tr;
  };

  StepReport report;
  double h = control.initial_step > 0.0 ? control.initial_step
             : norm_bound_ > 0.0        ? 0.25 / norm_bound_
                                        : std::numeric_limits<double>::infinity();
  {
    const BlockDensity d = as_density(x);
    if (!visit(0, times[0], d, probe(d))) {
      report.step = h;
      return report;
    }
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double dt = times[k] - times[k - 1];
    for (;;) {
      const long n = std::max(1L, static_cast<long>(std::ceil(dt / h - 1e-9)));
      TileSet coarse = x;
      rk4(coarse, dt / static_cast<double>(n), n);
      TileSet fine = x;
      rk4(fine, dt / static_cast<double>(2 * n), 2 * n);
      report.steps += 3 * n;
      const BlockDensity dc = as_density(coarse);
      const BlockDensity df = as_density(fine);
      const std::vector<double> oc = probe(dc);
      const std::vector<double> of = probe(df);
      double diff = 0.0;
      for (std::size_t m = 0; m < oc.size() && m < of.size(); ++m) {
        diff = std::max(diff, std::abs(oc[m] - of[m]));
      }
      if (!std::isfinite(diff)) diff = std::numeric_limits<double>::infinity();
      if (diff < control.tolerance) {
        x = std::move(fine);
        report.step = dt / static_cast<double>(2 * n);
        break;
      }
      h = dt / static_cast<double>(2 * n);
      if (++report.halvings > control.max_halvings) {
        std::ostringstream msg;
        msg << "step control did not converge at tau=" << times[k];
        throw NumericalError(msg.str());
      }
    }
    const Complex tr = trace_of(x);
    const double drift = std::abs(tr - Complex(1.0, 0.0));
    if (drift > control.trace_drift * std::max(1.0, times[k] - times[0])) {
      std::ostringstream msg;
      msg << "trace drift " << drift << " at tau=" << times[k];
      throw NumericalError(msg.str());
    }
    for (auto& tile : x.data) tile /= tr.real();
    const BlockDensity d = as_density(x);
    if (!visit(k, times[k], d, probe(d))) break;
  }
  return report;
}

std::vector<DensityMatrix> evolve_lindblad(const Operator& h, const std::vector<Operator>& jumps,
                                           const DensityMatrix& rho0, const TimeGrid& grid,
                                           const StepControl& control) {
  if (!(h.space() == rho0.space())) throw InvalidArgument("Hamiltonian and state spaces differ");
  std::vector<SparseMatrix> sparse_jumps;
  for (const auto& l : jumps) {
    if (!(l.space() == h.space())) throw InvalidArgument("jump operator lives on another space");
    sparse_jumps.push_back(l.matrix().sparseView(0.0, 0.0));
  }
  const LindbladPropagator prop(h.space(), h.matrix().sparseView(0.0, 0.0), sparse_jumps);
  const Probe entries = [](const BlockDensity& rho) {
    const Matrix m = rho.to_dense();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(2 * m.size()));
    for (Index k = 0; k < m.size(); ++k) {
      out.push_back(m.data()[k].real());
      out.push_back(m.data()[k].imag());
    }
    return out;
  };
  std::vector<DensityMatrix> out;
  prop.run(prop.prepare(rho0.matrix()), grid.times(), control, entries,
           [&](std::size_t, double, const BlockDensity& rho, const std::vector<double>&) {
             Matrix m = rho.to_dense();
             m = 0.5 * (m + m.adjoint()).eval();
             out.emplace_back(rho0.space(), std::move(m));
             return true;
           });
  return out;
}

Matrix lindblad_superoperator(const Operator& h, const std::vector<Operator>& jumps) {
  const Index n = h.dim();
  const Matrix id = Matrix::Identity(n, n);
  const Complex minus_i(0.0, -1.0);
  Matrix s = minus_i * (kron(id, h.matrix()) - kron(Matrix(h.matrix().transpose()), id));
  for (const auto& l : jumps) {
    if (!(l.space() == h.space())) throw InvalidArgument("jump operator lives on another space");
    const Matrix k = l.matrix().adjoint() * l.matrix();
    s += kron(Matrix(l.matrix().conjugate()), l.matrix());
    s -= 0.5 * kron(id, k);
    s -= 0.5 * kron(Matrix(k.transpose()), id);
  }
  return s;
}

}  // namespace thermoent

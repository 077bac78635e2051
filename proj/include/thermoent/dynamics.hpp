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

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "thermoent/block_algebra.hpp"
#include "thermoent/operator_core.hpp"

namespace thermoent {

struct TimeGrid {
  double start = 0.0;
  double end = 15.0;
  int samples = 600;

  void validate() const;
  std::vector<double> times() const;
};

inline constexpr int kGuardLevels = 4;

/// Smallest mode dimension whose thermal tail is below epsilon, plus guard levels.
int choose_dimension(double nbar_max, double epsilon, int guard = kGuardLevels);
/// Same rule for a Poisson number distribution (coherent and phase-randomised states).
int choose_dimension_poisson(double mean, double epsilon, int guard = kGuardLevels);

// --- baths ------------------------------------------------------------------

enum class ChannelKind { qubit_dephasing, qubit_relaxation, mode_damping };

std::string_view to_string(ChannelKind kind);
ChannelKind parse_channel_kind(std::string_view text);

struct BathChannel {
  ChannelKind kind = ChannelKind::mode_damping;
  std::string target;
  double rate = 0.0;
  double occupancy = 0.0;
};

struct BathSpec {
  std::vector<BathChannel> channels;

  void validate() const;
  bool empty() const;
};

std::vector<SparseOperator> lindblad_jumps(const BathSpec& bath, const HilbertSpace& space);

// --- closed evolution -------------------------------------------------------

/// exp(-i H tau) restricted to the connected blocks of H, each diagonalised once.
class UnitaryPropagator {
 public:
  UnitaryPropagator(HilbertSpace space, const SparseMatrix& h);
  explicit UnitaryPropagator(const SparseOperator& h);
  explicit UnitaryPropagator(const Operator& h);

  const HilbertSpace& space() const { return space_; }
  const std::shared_ptr<const BlockPartition>& partition() const { return partition_; }
  const Eigen::VectorXd& eigenvalues(std::size_t block) const { return blocks_[block].values; }
  const Matrix& eigenvectors(std::size_t block) const { return blocks_[block].vectors; }

  BlockEnsemble prepare(const Ensemble& e) const;
  BlockEnsemble evolve(const BlockEnsemble& e, double tau) const;
  BlockDensity evolve(const BlockDensity& rho, double tau) const;
  Matrix evolve(const Matrix& rho, double tau) const;

 private:
  struct Eigensystem {
    Eigen::VectorXd values;
    Matrix vectors;
  };
  HilbertSpace space_;
  std::shared_ptr<const BlockPartition> partition_;
  std::vector<Eigensystem> blocks_;
};

/// Closed trajectory of one initial state. Amplitudes are kept in the
/// eigenbasis so each sample costs one basis change per block. Mixed states
/// with many components switch to tiled density storage when that is cheaper.
class UnitaryTrajectory {
 public:
  UnitaryTrajectory(std::shared_ptr<const UnitaryPropagator> propagator, const Ensemble& initial);

  const SparseState& at(double tau);
  bool uses_tiles() const { return use_tiles_; }

 private:
  struct Coefficients {
    int block;
    Vector coeffs;
  };
  std::shared_ptr<const UnitaryPropagator> propagator_;
  bool use_tiles_ = false;
  std::vector<double> weights_;
  std::vector<std::vector<Coefficients>> components_;
  BlockDensity::Tiles eigen_tiles_;
  std::unique_ptr<BlockEnsemble> ensemble_;
  std::unique_ptr<BlockDensity> density_;
};

std::vector<DensityMatrix> evolve_unitary(const Operator& h, const DensityMatrix& rho0,
                                          const TimeGrid& grid);

// --- open evolution ---------------------------------------------------------

struct StepControl {
  double initial_step = 0.0;  // 0 selects a step from the generator norm
  double tolerance = 1e-7;
  int max_halvings = 8;
  double trace_drift = 1e-9;  // per unit tau
};

struct StepReport {
  double step = 0.0;
  int halvings = 0;
  long steps = 0;
};

/// Scalar observables used both for output and for the step-halving check.
using Probe = std::function<std::vector<double>(const BlockDensity&)>;
/// Receives each accepted sample; returning false stops the run.
using SampleVisitor =
    std::function<bool(std::size_t index, double tau, const BlockDensity& rho,
                       const std::vector<double>& observed)>;

class LindbladPropagator {
 public:
  LindbladPropagator(HilbertSpace space, const SparseMatrix& h,
                     const std::vector<SparseMatrix>& jumps);
  LindbladPropagator(const SparseOperator& h, const std::vector<SparseOperator>& jumps);

  const HilbertSpace& space() const { return space_; }
  const std::shared_ptr<const BlockPartition>& partition() const { return partition_; }
  /// Row-sum bound on the generator's action, used to pick the first step.
  double norm_bound() const { return norm_bound_; }

  BlockDensity prepare(const Ensemble& e) const;
  BlockDensity prepare(const Matrix& rho) const;

  StepReport run(const BlockDensity& rho0, const std::vector<double>& times,
                 const StepControl& control, const Probe& probe,
                 const SampleVisitor& visit) const;

 private:
  struct JumpTile {
    int row_block;
    SparseMatrix tile;
    SparseMatrix tile_adjoint;
  };
  struct TileSet;

  std::vector<TileKey> closure(const BlockDensity::Tiles& seed) const;
  void derivative(const TileSet& x, TileSet& out) const;
  void rk4(TileSet& x, double h, long steps) const;

  HilbertSpace space_;
  std::shared_ptr<const BlockPartition> partition_;
  std::vector<Matrix> drift_;  // A_b = -i H_b - K_b / 2 per block
  // jumps_[l][col_block] lists the tiles of jump l leaving that block.
  std::vector<std::vector<std::vector<JumpTile>>> jumps_;
  double norm_bound_ = 0.0;
};

std::vector<DensityMatrix> evolve_lindblad(const Operator& h, const std::vector<Operator>& jumps,
                                           const DensityMatrix& rho0, const TimeGrid& grid,
                                           const StepControl& control = {});

/// Column-stacked superoperator of the master equation; small spaces only.
Matrix lindblad_superoperator(const Operator& h, const std::vector<Operator>& jumps);

}  // namespace thermoent

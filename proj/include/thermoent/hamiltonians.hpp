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
#include <string>
#include <string_view>

#include "thermoent/operator_core.hpp"

namespace thermoent {

/// Vacuum permittivity (F/m) and elementary charge (C).
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;
inline constexpr double kElementaryCharge = 1.602176634e-19;
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;

/// Two-ion trap parameters in SI units.
struct PhysicalTrapParams {
  double mass = 0.0;            // kg
  double charge = 0.0;          // C
  double omega_x = 0.0;         // radial secular frequency, rad/s
  double omega_z = 0.0;         // axial secular frequency, rad/s
  double rabi_frequency = 0.0;  // rad/s
  double lamb_dicke = 0.0;
  double detuning = 0.0;        // rad/s; red sideband is -omega_x
  double laser_phase = 0.0;     // rad

  void validate() const;
};

/// |z1 - z2| of the two-ion equilibrium, from the axial force balance
/// m omega_z^2 z = e^2 / (4 pi eps0 (2z)^2).
double equilibrium_separation(const PhysicalTrapParams& params);
/// Magnitude of the Coulomb hopping rate e^2 / (4 pi eps0 2 m omega_x |dz|^3), rad/s.
double coulomb_bs_rate(const PhysicalTrapParams& params);
/// Red-sideband Jaynes-Cummings rate Omega * eta, rad/s.
double jc_rate(const PhysicalTrapParams& params);

enum class ModelKind { one_side, one_middle, two_side, two_middle, side_side, three_qubit };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

/// Which interaction graph to build and its couplings relative to the
/// normalising Jaynes-Cummings rate.
///
/// Ratio keys per model:
///   1S    r_1S = kBS/kJC1
///   1M    r_1M = kJC2/kJC1
///   2S    r_2S_BS = kBS/kJCa1, r_2S_b = kJCb1/kJCa1, optional r_2S_a1 (default 1)
///   2M    r_2M_b1, r_2M_b2, r_2M_a2 relative to kJCa1, optional r_2M_a1 (default 1)
///   1S1S  r_1S1S_BS = kBS/kJCa1, r_1S1S_b2 = kJCb2/kJCa1, optional r_1S1S_a1 (default 1)
///   3Q    k2_over_k1
struct ModelConfig {
  ModelKind model = ModelKind::one_side;
  double base_coupling = 1.0;  // normalising rate in rad/s; only converts tau to seconds
  std::map<std::string, double> ratios;
  std::map<std::string, double> phases;  // qubit-mode pair "qa:m1" -> JC phase
  std::map<std::string, int> mode_dims;  // "m1", "m2"
};

/// Labels used by the built models.
inline constexpr std::string_view kQubit = "q";
inline constexpr std::string_view kQubitA = "qa";
inline constexpr std::string_view kQubitB = "qb";
inline constexpr std::string_view kMode1 = "m1";
inline constexpr std::string_view kMode2 = "m2";

struct Model {
  HilbertSpace space;
  SparseOperator hamiltonian;
  /// Normalising rate divided out of every coupling; 1 unless the nominal
  /// normaliser was switched off and another JC rate took its place.
  double renormalization = 1.0;
};

/// kappa (sigma_+ a e^{i phi} + sigma_- a^dagger e^{-i phi}).
SparseOperator jc_term(const HilbertSpace& space, std::string_view qubit, std::string_view mode,
                       double kappa, double phase = 0.0);
/// kappa (a_i^dagger a_j + a_i a_j^dagger).
SparseOperator bs_term(const HilbertSpace& space, std::string_view mode_i, std::string_view mode_j,
                       double kappa);
/// kappa (sigma_+^i sigma_-^j + h.c.).
SparseOperator exchange_term(const HilbertSpace& space, std::string_view qubit_i,
                             std::string_view qubit_j, double kappa);
/// sum over modes of a^dagger a plus sum over qubits of sigma_+ sigma_-.
SparseOperator excitation_number(const HilbertSpace& space);

/// Subsystem layout of a model with the given mode dimensions.
HilbertSpace model_space(const ModelConfig& config);
/// Dimensionless interaction-picture Hamiltonian; time is tau = kappa_norm t.
Model build_model(const ModelConfig& config);

}  // namespace thermoent

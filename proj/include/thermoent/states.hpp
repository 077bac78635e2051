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

#include <optional>
#include <string>
#include <vector>

#include "thermoent/operator_core.hpp"

namespace thermoent {

/// Reduced Planck constant (J s) and Boltzmann constant (J/K), exact SI values.
inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kBoltzmann = 1.380649e-23;

/// Largest probability a Fock truncation may discard before construction
/// is refused.
inline constexpr double kDefaultTailTolerance = 1e-6;

/// Mean occupation given either directly or via temperature and frequency.
struct ThermalSpec {
  std::optional<double> nbar;
  std::optional<double> temperature;  // kelvin
  std::optional<double> frequency;    // rad/s

  double resolve() const;
};

/// Excited-state probability given either directly or via temperature and
/// transition frequency.
struct QubitThermalSpec {
  std::optional<double> pe;
  std::optional<double> temperature;
  std::optional<double> frequency;

  double resolve() const;
};

/// Bose-Einstein occupation 1 / (exp(hbar omega / kB T) - 1).
double nbar_from_temperature(double temperature, double omega);
/// Fermi factor exp(-x) / (exp(-x) + 1) with x = hbar omega / kB T.
double pe_from_temperature(double temperature, double omega_int);

/// Probability mass at n >= dim of the Boltzmann distribution with mean nbar.
double thermal_tail(double nbar, int dim);
/// Probability mass at n >= dim of the Poisson distribution with the given mean.
double poisson_tail(double mean, int dim);

/// Truncated Boltzmann state, renormalised. Throws TruncationError if the
/// discarded tail is not below `tail_tolerance`.
DensityMatrix thermal_oscillator(double nbar, int dim, std::string label = "m",
                                 double tail_tolerance = kDefaultTailTolerance);
/// diag(1 - pe, pe) in the (|g>, |e>) basis.
DensityMatrix thermal_qubit(double pe, std::string label = "q");
DensityMatrix fock_state(int n, int dim, std::string label = "m");
/// Truncated, renormalised coherent state projector.
DensityMatrix coherent_state(Complex alpha, int dim, std::string label = "m",
                             double tail_tolerance = kDefaultTailTolerance);
/// Phase-averaged coherent state: Poisson weights, no coherences.
DensityMatrix phase_randomized_coherent(double alpha_abs, int dim, std::string label = "m",
                                        double tail_tolerance = kDefaultTailTolerance);

/// Tensor product in list order; subsystem labels must not collide.
DensityMatrix compose(const std::vector<DensityMatrix>& parts);

/// Mean occupation sum_n n rho_nn of a single-mode state.
double mean_occupation(const DensityMatrix& rho);

}  // namespace thermoent

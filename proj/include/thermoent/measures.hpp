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

#include <string>
#include <string_view>
#include <vector>

#include "thermoent/block_algebra.hpp"
#include "thermoent/operator_core.hpp"

namespace thermoent {

inline constexpr double kNegativityClamp = 1e-10;

struct BipartiteCut {
  std::vector<std::string> block_a;
  std::vector<std::string> block_b;

  /// Throws unless the blocks are nonempty, disjoint and present in `space`.
  void validate(const HilbertSpace& space) const;
  /// block_a followed by block_b, in the declaration order of `space`.
  std::vector<std::string> labels(const HilbertSpace& space) const;
};

/// Cut between two single subsystems.
BipartiteCut cut_between(std::string a, std::string b);

double logarithmic_negativity(const DensityMatrix& rho, const BipartiteCut& cut);
/// `rho` lives on `space`; subsystems outside the cut are traced out first.
double logarithmic_negativity(const SparseMatrix& rho, const HilbertSpace& space,
                              const BipartiteCut& cut);
double logarithmic_negativity(const SparseState& state, const BipartiteCut& cut);

double concurrence(const DensityMatrix& rho);
double concurrence(const Matrix& rho);

/// LN generated by mixing the mode with vacuum on a balanced beamsplitter.
double entanglement_potential(const DensityMatrix& rho);
double entanglement_potential(const Matrix& rho);

double excited_population(const DensityMatrix& rho, std::string_view qubit);
double excited_population(const SparseState& state, std::string_view qubit);
double ground_fidelity(const DensityMatrix& rho, std::string_view qubit);
double ground_fidelity(const SparseState& state, std::string_view qubit);

double purity(const DensityMatrix& rho);
double purity(const SparseMatrix& rho);

}  // namespace thermoent

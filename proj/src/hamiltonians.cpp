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

#include "thermoent/hamiltonians.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "thermoent/errors.hpp"

namespace thermoent {

void PhysicalTrapParams::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(mass)) throw InvalidArgument("ion mass must be positive");
  if (!positive(charge)) throw InvalidArgument("ion charge must be positive");
  if (!positive(omega_x) || !positive(omega_z)) {
    throw InvalidArgument("trap frequencies must be positive");
  }
  if (!(omega_z < omega_x)) {
    throw InvalidArgument("axial frequency must be below the radial frequency for a linear chain");
  }
  if (!positive(lamb_dicke)) throw InvalidArgument("Lamb-Dicke parameter must be positive");
  if (!(rabi_frequency >= 0.0)) throw InvalidArgument("Rabi frequency must be >= 0");
}

double equilibrium_separation(const PhysicalTrapParams& params) {
  params.validate();
  const double coulomb = params.charge * params.charge / (4.0 * std::numbers::pi * kVacuumPermittivity);
  const double half = std::cbrt(coulomb / (4.0 * params.mass * params.omega_z * params.omega_z));
  return 2.0 * half;
}

double coulomb_bs_rate(const PhysicalTrapParams& params) {
  const double dz = equilibrium_separation(params);
  const double coulomb = params.charge * params.charge / (4.0 * std::numbers::pi * kVacuumPermittivity);
  return coulomb / (2.0 * params.mass * params.omega_x * dz * dz * dz);
}

double jc_rate(const PhysicalTrapParams& params) {
  params.validate();
  return params.rabi_frequency * params.lamb_dicke;
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::one_side:
      return "1S";
    case ModelKind::one_middle:
      return "1M";
    case ModelKind::two_side:
      return "2S";
    case ModelKind::two_middle:
      return "2M";
    case ModelKind::side_side:
      return "1S1S";
    case ModelKind::three_qubit:
      return "3Q";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  for (ModelKind k : {ModelKind::one_side, ModelKind::one_middle, ModelKind::two_side,
                      ModelKind::two_middle, ModelKind::side_side, ModelKind::three_qubit}) {
    if (to_string(k) == text) return k;
  }
  if (text == "1S-1S") return ModelKind::side_side;
  throw InvalidArgument("unknown model '" + std::string(text) + "'");
}

// --- terms ------------------------------------------------------------------

namespace {

void require_kind(const HilbertSpace& space, std::string_view label, SubsystemKind kind) {
  if (space.subsystem(label).kind != kind) {
    throw InvalidArgument("subsystem '" + std::string(label) + "' is not a " +
                          (kind == SubsystemKind::qubit ? "qubit" : "mode"));
  }
}

SparseMatrix local(const HilbertSpace& space, const Matrix& op, std::string_view label) {
  return embed_sparse(op, space, label).matrix();
}

}  // namespace

SparseOperator jc_term(const HilbertSpace& space, std::string_view qubit, std::string_view mode,
                       double kappa, double phase) {
  require_kind(space, qubit, SubsystemKind::qubit);
  require_kind(space, mode, SubsystemKind::mode);
  const int dim = space.subsystem(mode).dim;
  const SparseMatrix raise = local(space, pauli(Pauli::plus), qubit);
  const SparseMatrix lower_mode = local(space, annihilation(dim), mode);
  const SparseMatrix forward = raise * lower_mode * (kappa * std::polar(1.0, phase));
  SparseMatrix h = forward + SparseMatrix(forward.adjoint());
  h.prune(Complex(0.0, 0.0));
  return {space, std::move(h)};
}

SparseOperator bs_term(const HilbertSpace& space, std::string_view mode_i, std::string_view mode_j,
                       double kappa) {
  if (mode_i == mode_j) throw InvalidArgument("beamsplitter needs two distinct modes");
  require_kind(space, mode_i, SubsystemKind::mode);
  require_kind(space, mode_j, SubsystemKind::mode);
  const SparseMatrix ai = local(space, annihilation(space.subsystem(mode_i).dim), mode_i);
  const SparseMatrix aj = local(space, annihilation(space.subsystem(mode_j).dim), mode_j);
  const SparseMatrix forward = SparseMatrix(ai.adjoint()) * aj * Complex(kappa, 0.0);
  SparseMatrix h = forward + SparseMatrix(forward.adjoint());
  h.prune(Complex(0.0, 0.0));
  return {space, std::move(h)};
}

SparseOperator exchange_term(const HilbertSpace& space, std::string_view qubit_i,
                             std::string_view qubit_j, double kappa) {
  if (qubit_i == qubit_j) throw InvalidArgument("exchange needs two distinct qubits");
  require_kind(space, qubit_i, SubsystemKind::qubit);
  require_kind(space, qubit_j, SubsystemKind::qubit);
  const SparseMatrix forward = local(space, pauli(Pauli::plus), qubit_i) *
                               local(space, pauli(Pauli::minus), qubit_j) * Complex(kappa, 0.0);
  SparseMatrix h = forward + SparseMatrix(forward.adjoint());
  h.prune(Complex(0.0, 0.0));
  return {space, std::move(h)};
}

SparseOperator excitation_number(const HilbertSpace& space) {
  std::vector<Eigen::Triplet<Complex>> diag;
  for (Index g = 0; g < space.total_dim(); ++g) {
    int count = 0;
    for (std::size_t k = 0; k < space.size(); ++k) count += space.digit(g, k);
    if (count != 0) diag.emplace_back(g, g, static_cast<double>(count));
  }
  SparseMatrix n(space.total_dim(), space.total_dim());
  n.setFromTriplets(diag.begin(), diag.end());
  return {space, std::move(n)};
}

// --- models -----------------------------------------------------------------

namespace {

struct RatioReader {
  const ModelConfig& config;
  std::set<std::string> used;

  double required(const std::string& key) {
    used.insert(key);
    auto it = config.ratios.find(key);
    if (it == config.ratios.end()) {
      throw InvalidArgument("model " + std::string(to_string(config.model)) +
                            " requires ratio '" + key + "'");
    }
    return check(key, it->second);
  }
  double optional(const std::string& key, double fallback) {
    used.insert(key);
    auto it = config.ratios.find(key);
    return it == config.ratios.end() ? fallback : check(key, it->second);
  }
  static double check(const std::string& key, double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("ratio '" + key + "' must be a finite nonnegative number");
    }
    return v;
  }
  void reject_unused() const {
    for (const auto& [key, value] : config.ratios) {
      if (!used.count(key)) {
        throw InvalidArgument("ratio '" + key + "' does not apply to model " +
                              std::string(to_string(config.model)));
      }
    }
  }
};

int mode_dim(const ModelConfig& config, std::string_view label) {
  auto it = config.mode_dims.find(std::string(label));
  if (it == config.mode_dims.end()) {
    throw InvalidArgument("missing dimension for mode '" + std::string(label) + "'");
  }
  if (it->second < 2) throw InvalidArgument("mode dimensions must be >= 2");
  return it->second;
}

double phase_of(const ModelConfig& config, std::string_view qubit, std::string_view mode) {
  auto it = config.phases.find(std::string(qubit) + ":" + std::string(mode));
  return it == config.phases.end() ? 0.0 : it->second;
}

Subsystem qubit_sub(std::string_view label) {
  return {std::string(label), 2, SubsystemKind::qubit};
}

}  // namespace

HilbertSpace model_space(const ModelConfig& config) {
  switch (config.model) {
    case ModelKind::one_side:
    case ModelKind::one_middle:
      return HilbertSpace({qubit_sub(kQubit),
                           {std::string(kMode1), mode_dim(config, kMode1), SubsystemKind::mode},
                           {std::string(kMode2), mode_dim(config, kMode2), SubsystemKind::mode}});
    case ModelKind::two_side:
    case ModelKind::two_middle:
    case ModelKind::side_side:
      return HilbertSpace({qubit_sub(kQubitA), qubit_sub(kQubitB),
                           {std::string(kMode1), mode_dim(config, kMode1), SubsystemKind::mode},
                           {std::string(kMode2), mode_dim(config, kMode2), SubsystemKind::mode}});
    case ModelKind::three_qubit:
      return HilbertSpace({qubit_sub("q1"), qubit_sub("q2"), qubit_sub("q3")});
  }
  throw InvalidArgument("unknown model");
}

Model build_model(const ModelConfig& config) {
  if (!(config.base_coupling > 0.0)) throw InvalidArgument("base coupling must be positive");
  HilbertSpace space = model_space(config);
  RatioReader ratios{config, {}};
  SparseOperator h = SparseOperator::zero(space);
  double norm = 1.0;

  auto jc = [&](std::string_view q, std::string_view m, double k) {
    return jc_term(space, q, m, k, phase_of(config, q, m));
  };

  switch (config.model) {
    case ModelKind::one_side: {
      const double r = ratios.required("r_1S");
      h = jc(kQubit, kMode1, 1.0) + bs_term(space, kMode1, kMode2, r);
      break;
    }
    case ModelKind::one_middle: {
      const double r = ratios.required("r_1M");
      h = jc(kQubit, kMode1, 1.0) + jc(kQubit, kMode2, r);
      break;
    }
    case ModelKind::two_side: {
      const double bs = ratios.required("r_2S_BS");
      const double b1 = ratios.required("r_2S_b");
      const double a1 = ratios.optional("r_2S_a1", 1.0);
      norm = a1 > 0.0 ? a1 : b1;
      if (!(norm > 0.0)) throw InvalidArgument("model 2S needs a nonzero JC coupling");
      h = jc(kQubitA, kMode1, a1 / norm) + jc(kQubitB, kMode1, b1 / norm) +
          bs_term(space, kMode1, kMode2, bs / norm);
      break;
    }
    case ModelKind::two_middle: {
      const double b1 = ratios.required("r_2M_b1");
      const double b2 = ratios.required("r_2M_b2");
      const double a2 = ratios.required("r_2M_a2");
      const double a1 = ratios.optional("r_2M_a1", 1.0);
      norm = a1 > 0.0 ? a1 : b1;
      if (!(norm > 0.0)) throw InvalidArgument("model 2M needs a nonzero normalising JC coupling");
      h = jc(kQubitA, kMode1, a1 / norm) + jc(kQubitA, kMode2, a2 / norm) +
          jc(kQubitB, kMode1, b1 / norm) + jc(kQubitB, kMode2, b2 / norm);
      break;
    }
    case ModelKind::side_side: {
      const double bs = ratios.required("r_1S1S_BS");
      const double b2 = ratios.required("r_1S1S_b2");
      const double a1 = ratios.optional("r_1S1S_a1", 1.0);
      norm = a1 > 0.0 ? a1 : b2;
      if (!(norm > 0.0)) throw InvalidArgument("model 1S1S needs a nonzero JC coupling");
      h = jc(kQubitA, kMode1, a1 / norm) + jc(kQubitB, kMode2, b2 / norm) +
          bs_term(space, kMode1, kMode2, bs / norm);
      break;
    }
    case ModelKind::three_qubit: {
      const double k2 = ratios.required("k2_over_k1");
      h = exchange_term(space, "q1", "q2", 1.0) + exchange_term(space, "q2", "q3", k2);
      break;
    }
  }
  ratios.reject_unused();
  return {std::move(space), std::move(h), norm};
}

}  // namespace thermoent

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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thermoent/dynamics.hpp"
#include "thermoent/hamiltonians.hpp"
#include "thermoent/states.hpp"

namespace thermoent {

using Json = nlohmann::ordered_json;

enum class StateKind { thermal, fock, coherent, prcs };

struct StateSpec {
  StateKind kind = StateKind::thermal;
  std::optional<double> nbar;  // modes
  std::optional<double> pe;    // qubits
  std::optional<double> temperature;
  std::optional<double> frequency;
  int fock = 0;
  std::optional<double> alpha;  // |alpha| for coherent and prcs
  std::optional<double> mean;   // |alpha|^2, alternative to alpha
  double phase = 0.0;

  double alpha_abs() const;
};

enum class MeasureKind {
  log_negativity,
  concurrence,
  entanglement_potential,
  excited_population,
  ground_fidelity,
  purity,
  mean_occupation
};

struct ObservableSpec {
  std::string name;
  MeasureKind measure = MeasureKind::log_negativity;
  std::vector<std::string> a;       // log_negativity, concurrence
  std::vector<std::string> b;
  std::string target;               // single-subsystem measures
  std::vector<std::string> labels;  // purity; empty means the full system
};

struct DimsSpec {
  bool automatic = true;
  double epsilon = kDefaultTailTolerance;
  int guard = kGuardLevels;
  int extra = 0;
  std::map<std::string, int> values;
  /// Tail tolerance used when building initial states; defaults to epsilon.
  std::optional<double> tail_tolerance;
};

struct PhysicalModel {
  double mass_amu = 40.0;
  double charge_e = 1.0;
  double omega_x = 0.0;
  double omega_z = 0.0;
  double rabi_frequency = 0.0;
  double lamb_dicke = 0.0;

  PhysicalTrapParams params() const;
};

struct ExperimentConfig {
  std::string name;
  std::string figure;
  std::string note;
  ModelConfig model;
  std::optional<PhysicalModel> physical;  // 1S only: derives r_1S and the time unit
  std::map<std::string, StateSpec> initial;
  std::optional<BathSpec> bath;
  TimeGrid grid;
  std::vector<ObservableSpec> observables;
  DimsSpec dims;
  StepControl step;
};

enum class Reduction { first_peak_value, first_peak_time, max_value, full_series, dimension };
enum class Refinement { quadratic, golden };

struct SweepAxis {
  std::string name;
  std::vector<std::string> paths;
  std::vector<double> values;
};

struct SweepConfig {
  std::string name;
  std::string figure;
  std::string note;
  Json base;
  std::vector<SweepAxis> axes;
  Reduction reduction = Reduction::first_peak_value;
  std::string column;  // observable reduced by peak and max reductions
  Refinement refine = Refinement::quadratic;
  std::optional<std::string> argmax_axis;
};

std::string_view to_string(StateKind kind);
std::string_view to_string(MeasureKind kind);
std::string_view to_string(Reduction kind);
std::string_view to_string(Refinement kind);

ExperimentConfig parse_experiment(const Json& doc);
Json to_json(const ExperimentConfig& config);

SweepConfig parse_sweep(const Json& doc);
Json to_json(const SweepConfig& config);

/// A document with an "axes" key is a sweep; anything else is an experiment.
bool is_sweep_document(const Json& doc);

/// Assigns `value` at a dotted path such as "initial.m1.nbar" or
/// "bath.channels.0.rate". Intermediate objects must exist except the leaf.
void set_path(Json& doc, const std::string& path, double value);

Json load_json_file(const std::string& path);

}  // namespace thermoent

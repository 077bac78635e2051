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
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "thermoent/config.hpp"
#include "thermoent/dynamics.hpp"

namespace thermoent {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr double kPeakThreshold = 1e-6;
inline constexpr double kConvergenceTolerance = 1e-4;

// --- tables -----------------------------------------------------------------

using Cell = std::variant<double, std::string>;

struct Table {
  Json metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column_index(const std::string& name) const;
  /// Numeric view of a column; string cells read as NaN.
  std::vector<double> numeric(const std::string& name) const;
};

enum class OutputFormat { csv, json };
OutputFormat parse_output_format(std::string_view text);

std::string format_number(double value);
void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);
void write_table(const Table& table, std::ostream& out, OutputFormat format);
/// gnuplot script plotting every numeric column of a CSV file against the first.
std::string gnuplot_script(const Table& table, const std::string& csv_path);

// --- peaks ------------------------------------------------------------------

struct PeakResult {
  double tau = 0.0;
  double value = 0.0;
  bool interior = false;
  std::size_t index = 0;
};

/// First strict interior local maximum above `threshold`, refined by a
/// parabola through its neighbours. Without one, returns the last sample
/// with interior = false.
PeakResult first_peak(const std::vector<double>& tau, const std::vector<double>& values,
                      double threshold = kPeakThreshold);
/// Largest sample, refined the same way when it is interior.
PeakResult global_max(const std::vector<double>& tau, const std::vector<double>& values);

/// Vertex of the parabola through three points.
std::pair<double, double> parabola_vertex(double x0, double y0, double x1, double y1, double x2,
                                          double y2);
/// Golden-section maximisation of f on [lo, hi].
std::pair<double, double> golden_maximize(const std::function<double(double)>& f, double lo,
                                          double hi, double tolerance = 1e-11);

class FirstPeakTracker {
 public:
  explicit FirstPeakTracker(double threshold = kPeakThreshold) : threshold_(threshold) {}
  /// Returns true once the first peak is confirmed by the sample after it.
  bool push(double tau, double value);
  bool found() const { return found_; }
  const PeakResult& result() const { return result_; }
  /// Samples the peak was refined from (valid once found).
  const std::vector<double>& bracket() const { return bracket_; }

 private:
  double threshold_;
  std::vector<double> tau_;
  std::vector<double> value_;
  bool found_ = false;
  PeakResult result_;
  std::vector<double> bracket_;
};

// --- runner -----------------------------------------------------------------

/// Auto or explicit mode dimensions for a config (label -> dim).
std::map<std::string, int> resolve_dims(const ExperimentConfig& config);

class Simulation {
 public:
  explicit Simulation(ExperimentConfig config);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// The config with dimensions and derived couplings filled in.
  const ExperimentConfig& config() const { return config_; }
  const HilbertSpace& space() const;
  const std::vector<std::string>& columns() const { return columns_; }
  bool open() const { return static_cast<bool>(config_.bath); }
  int max_mode_dim() const;

  /// Visits every grid sample in order; the visitor returns false to stop.
  void run(const std::function<bool(double tau, const std::vector<double>& values)>& visit);
  /// Observables at an arbitrary time; closed dynamics only.
  std::vector<double> observe_at(double tau);

  Json metadata() const;

 private:
  struct Impl;
  ExperimentConfig config_;
  std::vector<std::string> columns_;
  std::unique_ptr<Impl> impl_;
};

struct RunOptions {
  std::optional<double> epsilon;  // overrides dims.epsilon
};

Table run(const ExperimentConfig& config, const RunOptions& options = {});

struct SweepOptions {
  int jobs = 0;  // 0 uses every available core
  std::optional<double> epsilon;
};

Table sweep(const SweepConfig& config, const SweepOptions& options = {});

Table convergence_study(const ExperimentConfig& config, const std::vector<int>& dims,
                        std::optional<std::string> column = std::nullopt);

// --- presets ----------------------------------------------------------------

struct Preset {
  std::string name;
  std::string figure;
  std::string description;
  Json document;  // experiment or sweep
};

const std::vector<Preset>& presets();
const Preset& preset(const std::string& name);

}  // namespace thermoent

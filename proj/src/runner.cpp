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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "thermoent/errors.hpp"
#include "thermoent/experiments.hpp"
#include "thermoent/measures.hpp"
#include "thermoent/states.hpp"

namespace thermoent {

// --- peaks ------------------------------------------------------------------

std::pair<double, double> parabola_vertex(double x0, double y0, double x1, double y1, double x2,
                                          double y2) {
  const double d1 = (y1 - y0) / (x1 - x0);
  const double d2 = (y2 - y1) / (x2 - x1);
  const double a = (d2 - d1) / (x2 - x0);
  if (!(a < 0.0)) return {x1, y1};
  double x = 0.5 * (x0 + x1) - d1 / (2.0 * a);
  x = std::clamp(x, x0, x2);
  const double y = y0 + d1 * (x - x0) + a * (x - x0) * (x - x1);
  return {x, y};
}

std::pair<double, double> golden_maximize(const std::function<double(double)>& f, double lo,
                                          double hi, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && hi - lo > tolerance; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc > fd ? std::pair{c, fc} : std::pair{d, fd};
}

PeakResult first_peak(const std::vector<double>& tau, const std::vector<double>& values,
                      double threshold) {
  if (tau.size() != values.size()) throw InvalidArgument("time and value series differ in length");
  if (values.size() < 3) throw InvalidArgument("first_peak needs at least 3 samples");
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    if (values[k] > values[k - 1] && values[k] > values[k + 1] && values[k] > threshold) {
      const auto [x, y] = parabola_vertex(tau[k - 1], values[k - 1], tau[k], values[k], tau[k + 1],
                                          values[k + 1]);
      return {x, y, true, k};
    }
  }
  return {tau.back(), values.back(), false, values.size() - 1};
}

PeakResult global_max(const std::vector<double>& tau, const std::vector<double>& values) {
  if (tau.size() != values.size() || values.empty()) {
    throw InvalidArgument("global_max needs a nonempty series");
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) best = k;
  }
  if (best == 0 || best + 1 == values.size()) return {tau[best], values[best], false, best};
  const auto [x, y] = parabola_vertex(tau[best - 1], values[best - 1], tau[best], values[best],
                                      tau[best + 1], values[best + 1]);
  return {x, y, true, best};
}

bool FirstPeakTracker::push(double tau, double value) {
  if (found_) return true;
  tau_.push_back(tau);
  value_.push_back(value);
  if (tau_.size() > 3) {
    tau_.erase(tau_.begin());
    value_.erase(value_.begin());
  }
  if (tau_.size() == 3 && value_[1] > value_[0] && value_[1] > value_[2] &&
      value_[1] > threshold_) {
    const auto [x, y] = parabola_vertex(tau_[0], value_[0], tau_[1], value_[1], tau_[2], value_[2]);
    result_ = {x, y, true, 0};
    bracket_ = tau_;
    found_ = true;
  } else {
    result_ = {tau, value, false, 0};
  }
  return found_;
}

// --- dimensions -------------------------------------------------------------

namespace {

std::vector<std::string> mode_labels(ModelKind kind) {
  if (kind == ModelKind::three_qubit) return {};
  return {std::string(kMode1), std::string(kMode2)};
}

int needed_dim(const StateSpec& s, const DimsSpec& dims) {
  switch (s.kind) {
    case StateKind::thermal: {
      if (s.pe) throw ConfigError("a mode state cannot set pe");
      const double nbar = ThermalSpec{s.nbar, s.temperature, s.frequency}.resolve();
      return choose_dimension(nbar, dims.epsilon, dims.guard);
    }
    case StateKind::fock:
      return std::max(2, s.fock + 1) + dims.guard;
    case StateKind::coherent:
    case StateKind::prcs: {
      const double a = s.alpha_abs();
      return choose_dimension_poisson(a * a, dims.epsilon, dims.guard);
    }
  }
  return 2 + dims.guard;
}

}  // namespace

std::map<std::string, int> resolve_dims(const ExperimentConfig& config) {
  const std::vector<std::string> modes = mode_labels(config.model.model);
  for (const auto& [label, dim] : config.dims.values) {
    if (std::find(modes.begin(), modes.end(), label) == modes.end()) {
      throw ConfigError("dims.values." + label + " is not a mode of model " +
                        std::string(to_string(config.model.model)));
    }
  }
  int shared = 0;
  if (config.dims.automatic) {
    for (const auto& label : modes) {
      if (config.dims.values.count(label)) continue;
      auto it = config.initial.find(label);
      if (it == config.initial.end()) throw ConfigError("initial state missing for '" + label + "'");
      shared = std::max(shared, needed_dim(it->second, config.dims));
    }
  }
  std::map<std::string, int> out;
  for (const auto& label : modes) {
    auto it = config.dims.values.find(label);
    int dim = 0;
    if (it != config.dims.values.end()) {
      dim = it->second;
    } else if (config.dims.automatic) {
      dim = shared;
    } else {
      throw ConfigError("dims.values." + label + " is required when dims.auto is false");
    }
    out[label] = dim + config.dims.extra;
  }
  return out;
}

// --- simulation -------------------------------------------------------------

struct Simulation::Impl {
  std::optional<Model> model;
  std::map<std::string, int> dims;
  std::optional<Ensemble> initial;
  std::shared_ptr<const UnitaryPropagator> unitary;
  std::unique_ptr<UnitaryTrajectory> trajectory;
  std::unique_ptr<LindbladPropagator> lindblad;
  StepReport report;
  bool stepped = false;
  Json derived = Json::object();
};

namespace {

DensityMatrix build_state(const StateSpec& s, const Subsystem& sub, double tail) {
  if (sub.kind == SubsystemKind::qubit) {
    switch (s.kind) {
      case StateKind::thermal:
        if (s.nbar) throw ConfigError("qubit '" + sub.label + "' cannot set nbar");
        return thermal_qubit(QubitThermalSpec{s.pe, s.temperature, s.frequency}.resolve(), sub.label);
      case StateKind::fock:
        if (s.fock > 1) throw ConfigError("qubit '" + sub.label + "' fock state must be 0 or 1");
        return thermal_qubit(static_cast<double>(s.fock), sub.label);
      default:
        throw ConfigError("qubit '" + sub.label + "' must be thermal or fock");
    }
  }
  switch (s.kind) {
    case StateKind::thermal:
      return thermal_oscillator(ThermalSpec{s.nbar, s.temperature, s.frequency}.resolve(), sub.dim,
                                sub.label, tail);
    case StateKind::fock:
      return fock_state(s.fock, sub.dim, sub.label);
    case StateKind::coherent:
      return coherent_state(std::polar(s.alpha_abs(), s.phase), sub.dim, sub.label, tail);
    case StateKind::prcs:
      return phase_randomized_coherent(s.alpha_abs(), sub.dim, sub.label, tail);
  }
  throw ConfigError("unsupported state");
}

void require_kind(const HilbertSpace& space, const std::string& label, SubsystemKind kind,
                  const std::string& observable) {
  if (!space.contains(label)) {
    throw ConfigError("observable '" + observable + "' refers to unknown subsystem '" + label + "'");
  }
  if (space.subsystem(label).kind != kind) {
    throw ConfigError("observable '" + observable + "' needs '" + label + "' to be a " +
                      (kind == SubsystemKind::qubit ? "qubit" : "mode"));
  }
}

void validate_observables(const std::vector<ObservableSpec>& obs, const HilbertSpace& space) {
  for (const auto& o : obs) {
    switch (o.measure) {
      case MeasureKind::log_negativity:
        try {
          BipartiteCut{o.a, o.b}.validate(space);
        } catch (const InvalidArgument& e) {
          throw ConfigError("observable '" + o.name + "': " + e.what());
        }
        break;
      case MeasureKind::concurrence:
        require_kind(space, o.a.front(), SubsystemKind::qubit, o.name);
        require_kind(space, o.b.front(), SubsystemKind::qubit, o.name);
        if (o.a.front() == o.b.front()) throw ConfigError("observable '" + o.name + "' needs two qubits");
        break;
      case MeasureKind::entanglement_potential:
      case MeasureKind::mean_occupation:
        require_kind(space, o.target, SubsystemKind::mode, o.name);
        break;
      case MeasureKind::excited_population:
      case MeasureKind::ground_fidelity:
        require_kind(space, o.target, SubsystemKind::qubit, o.name);
        break;
      case MeasureKind::purity:
        for (const auto& l : o.labels) {
          if (!space.contains(l)) throw ConfigError("observable '" + o.name + "' refers to unknown '" + l + "'");
        }
        break;
    }
  }
}

std::vector<double> observe(const SparseState& state, const std::vector<ObservableSpec>& obs) {
  std::vector<double> out;
  out.reserve(obs.size());
  for (const auto& o : obs) {
    switch (o.measure) {
      case MeasureKind::log_negativity:
        out.push_back(logarithmic_negativity(state, BipartiteCut{o.a, o.b}));
        break;
      case MeasureKind::concurrence: {
        const BipartiteCut cut{o.a, o.b};
        out.push_back(concurrence(Matrix(state.reduced(cut.labels(state.space())))));
        break;
      }
      case MeasureKind::entanglement_potential:
        out.push_back(entanglement_potential(Matrix(state.reduced({o.target}))));
        break;
      case MeasureKind::excited_population:
        out.push_back(excited_population(state, o.target));
        break;
      case MeasureKind::ground_fidelity:
        out.push_back(ground_fidelity(state, o.target));
        break;
      case MeasureKind::purity: {
        std::vector<std::string> labels = o.labels;
        if (labels.empty()) labels = state.space().labels();
        std::vector<std::string> sorted;
        for (const auto& l : state.space().labels()) {
          if (std::find(labels.begin(), labels.end(), l) != labels.end()) sorted.push_back(l);
        }
        out.push_back(purity(state.reduced(sorted)));
        break;
      }
      case MeasureKind::mean_occupation: {
        const SparseMatrix rho = state.reduced({o.target});
        double n = 0.0;
        for (Index k = 0; k < rho.rows(); ++k) n += static_cast<double>(k) * rho.coeff(k, k).real();
        out.push_back(n);
        break;
      }
    }
  }
  return out;
}

std::string at_tau(const std::string& what, double tau) {
  std::ostringstream s;
  s << what << " (at tau=" << tau << ")";
  return s.str();
}

}  // namespace

Simulation::Simulation(ExperimentConfig config) : config_(std::move(config)), impl_(std::make_unique<Impl>()) {
  Impl& im = *impl_;
  if (config_.physical) {
    if (config_.model.ratios.count("r_1S")) {
      throw ConfigError("model.physical derives r_1S; do not set it as well");
    }
    const PhysicalTrapParams p = config_.physical->params();
    const double bs = coulomb_bs_rate(p);
    const double jc = jc_rate(p);
    if (!(jc > 0.0)) throw ConfigError("model.physical needs a positive JC rate");
    config_.model.ratios["r_1S"] = bs / jc;
    config_.model.base_coupling = jc;
    im.derived["equilibrium_separation_m"] = equilibrium_separation(p);
    im.derived["kappa_bs_rad_s"] = bs;
    im.derived["kappa_jc_rad_s"] = jc;
    im.derived["r_1S"] = bs / jc;
  }
  im.dims = resolve_dims(config_);
  config_.model.mode_dims = im.dims;
  im.model = build_model(config_.model);
  const HilbertSpace& space = im.model->space;

  for (const auto& [label, spec] : config_.initial) {
    if (!space.contains(label)) {
      throw ConfigError("initial state for '" + label + "' does not match model " +
                        std::string(to_string(config_.model.model)));
    }
  }
  const double tail = config_.dims.tail_tolerance.value_or(config_.dims.epsilon);
  std::vector<Ensemble> parts;
  for (const auto& sub : space.subsystems()) {
    auto it = config_.initial.find(sub.label);
    if (it == config_.initial.end()) throw ConfigError("initial state missing for '" + sub.label + "'");
    parts.push_back(Ensemble::from_density(build_state(it->second, sub, tail)));
  }
  im.initial = Ensemble::product(parts);

  validate_observables(config_.observables, space);
  for (const auto& o : config_.observables) columns_.push_back(o.name);

  if (config_.bath) {
    const auto jumps = lindblad_jumps(*config_.bath, space);
    im.lindblad = std::make_unique<LindbladPropagator>(im.model->hamiltonian, jumps);
  } else {
    im.unitary = std::make_shared<const UnitaryPropagator>(im.model->hamiltonian);
    im.trajectory = std::make_unique<UnitaryTrajectory>(im.unitary, *im.initial);
  }
}

Simulation::~Simulation() = default;

const HilbertSpace& Simulation::space() const { return impl_->model->space; }

int Simulation::max_mode_dim() const {
  int d = 0;
  for (const auto& [label, dim] : impl_->dims) d = std::max(d, dim);
  return d;
}

void Simulation::run(const std::function<bool(double, const std::vector<double>&)>& visit) {
  Impl& im = *impl_;
  const std::vector<double> times = config_.grid.times();
  if (im.trajectory) {
    for (double tau : times) {
      std::vector<double> values;
      try {
        values = observe(im.trajectory->at(tau), config_.observables);
      } catch (const NumericalError& e) {
        throw NumericalError(at_tau(e.what(), tau));
      }
      if (!visit(tau, values)) return;
    }
    return;
  }
  const Probe probe = [&](const BlockDensity& rho) {
    return observe(rho, config_.observables);
  };
  im.report = im.lindblad->run(
      im.lindblad->prepare(*im.initial), times, config_.step, probe,
      [&](std::size_t, double tau, const BlockDensity&, const std::vector<double>& values) {
        return visit(tau, values);
      });
  im.stepped = true;
}

std::vector<double> Simulation::observe_at(double tau) {
  if (!impl_->trajectory) throw InvalidArgument("observe_at needs closed dynamics");
  return observe(impl_->trajectory->at(tau), config_.observables);
}

Json Simulation::metadata() const {
  const Impl& im = *impl_;
  Json m;
  m["generator"] = "thermoent " + std::string(kVersion);
  if (!config_.name.empty()) m["name"] = config_.name;
  if (!config_.figure.empty()) m["figure"] = config_.figure;
  m["config"] = to_json(config_);
  m["dims"] = Json::object();
  for (const auto& [label, dim] : im.dims) m["dims"][label] = dim;
  m["hilbert_dim"] = im.model->space.total_dim();
  m["dynamics"] = open() ? "lindblad" : "unitary";
  const auto& partition = open() ? im.lindblad->partition() : im.unitary->partition();
  m["blocks"] = partition->num_blocks();
  m["largest_block"] = partition->largest_block();
  m["coupling_renormalization"] = im.model->renormalization;
  m["time_unit_s"] = 1.0 / (config_.model.base_coupling * im.model->renormalization);
  if (!im.derived.empty()) m["derived"] = im.derived;
  if (im.stepped) {
    m["step"] = {{"final_step", im.report.step},
                 {"halvings", im.report.halvings},
                 {"rk4_steps", im.report.steps}};
  }
  return m;
}

// --- run --------------------------------------------------------------------

namespace {

ExperimentConfig with_epsilon(ExperimentConfig c, std::optional<double> epsilon) {
  if (epsilon) {
    if (!(*epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    c.dims.epsilon = *epsilon;
  }
  return c;
}

std::string describe(const std::exception& e) {
  if (dynamic_cast<const TruncationError*>(&e)) return std::string("truncation: ") + e.what();
  if (dynamic_cast<const NumericalError*>(&e)) return std::string("numerical: ") + e.what();
  return std::string("config: ") + e.what();
}

}  // namespace

Table run(const ExperimentConfig& config, const RunOptions& options) {
  Simulation sim(with_epsilon(config, options.epsilon));
  Table t;
  t.columns.push_back("tau");
  for (const auto& c : sim.columns()) t.columns.push_back(c);
  sim.run([&](double tau, const std::vector<double>& values) {
    std::vector<Cell> row{tau};
    for (double v : values) row.emplace_back(v);
    t.rows.push_back(std::move(row));
    return true;
  });
  t.metadata = sim.metadata();
  return t;
}

// --- sweep ------------------------------------------------------------------

namespace {

std::size_t column_of(const Simulation& sim, const std::string& name) {
  const auto& cols = sim.columns();
  auto it = std::find(cols.begin(), cols.end(), name);
  if (it == cols.end()) throw ConfigError("no observable named '" + name + "'");
  return static_cast<std::size_t>(it - cols.begin());
}

PeakResult reduce_peak(Simulation& sim, const SweepConfig& s) {
  const std::size_t col = column_of(sim, s.column);
  const bool golden = s.refine == Refinement::golden && !sim.open();
  if (s.reduction == Reduction::max_value) {
    std::vector<double> tau, values;
    sim.run([&](double t, const std::vector<double>& v) {
      tau.push_back(t);
      values.push_back(v[col]);
      return true;
    });
    PeakResult best = global_max(tau, values);
    if (golden && best.interior) {
      const auto [x, y] = golden_maximize([&](double t) { return sim.observe_at(t)[col]; },
                                          tau[best.index - 1], tau[best.index + 1]);
      if (y >= values[best.index]) best = {x, y, true, best.index};
    }
    return best;
  }
  FirstPeakTracker tracker;
  std::size_t count = 0;
  sim.run([&](double t, const std::vector<double>& v) {
    ++count;
    return !tracker.push(t, v[col]);
  });
  if (count < 3) throw InvalidArgument("first_peak needs at least 3 samples");
  PeakResult peak = tracker.result();
  if (golden && tracker.found()) {
    const auto& b = tracker.bracket();
    const auto [x, y] = golden_maximize([&](double t) { return sim.observe_at(t)[col]; }, b[0], b[2]);
    if (y >= peak.value) peak = {x, y, true, 0};
  }
  return peak;
}

std::vector<std::vector<Cell>> evaluate_point(const SweepConfig& s,
                                              const std::vector<double>& point,
                                              const SweepOptions& options,
                                              std::size_t observable_count) {
  std::vector<Cell> prefix(point.begin(), point.end());
  auto fail = [&](const std::string& message) {
    std::vector<Cell> row = prefix;
    std::size_t numeric = 0;
    switch (s.reduction) {
      case Reduction::full_series:
        numeric = 1 + observable_count;
        break;
      case Reduction::dimension:
        numeric = 1;
        break;
      default:
        numeric = 4;
        break;
    }
    for (std::size_t k = 0; k < numeric; ++k) row.emplace_back(std::numeric_limits<double>::quiet_NaN());
    row.emplace_back(message);
    return std::vector<std::vector<Cell>>{row};
  };
  try {
    Json doc = s.base;
    for (std::size_t a = 0; a < s.axes.size(); ++a) {
      for (const auto& path : s.axes[a].paths) set_path(doc, path, point[a]);
    }
    const ExperimentConfig config = with_epsilon(parse_experiment(doc), options.epsilon);
    if (s.reduction == Reduction::dimension) {
      int d = 0;
      for (const auto& [label, dim] : resolve_dims(config)) d = std::max(d, dim);
      std::vector<Cell> row = prefix;
      row.emplace_back(static_cast<double>(d));
      row.emplace_back(std::string());
      return {row};
    }
    Simulation sim(config);
    if (s.reduction == Reduction::full_series) {
      std::vector<std::vector<Cell>> rows;
      sim.run([&](double tau, const std::vector<double>& values) {
        std::vector<Cell> row = prefix;
        row.emplace_back(tau);
        for (double v : values) row.emplace_back(v);
        row.emplace_back(std::string());
        rows.push_back(std::move(row));
        return true;
      });
      return rows;
    }
    const PeakResult peak = reduce_peak(sim, s);
    std::vector<Cell> row = prefix;
    row.emplace_back(peak.value);
    row.emplace_back(peak.tau);
    row.emplace_back(peak.interior ? 1.0 : 0.0);
    row.emplace_back(static_cast<double>(sim.max_mode_dim()));
    row.emplace_back(std::string());
    return {row};
  } catch (const std::exception& e) {
    return fail(describe(e));
  }
}

}  // namespace

Table sweep(const SweepConfig& s, const SweepOptions& options) {
  const ExperimentConfig base = parse_experiment(s.base);

  std::vector<std::vector<double>> axis_values;
  for (const auto& axis : s.axes) {
    std::vector<double> v = axis.values;
    std::sort(v.begin(), v.end());
    axis_values.push_back(std::move(v));
  }
  std::vector<std::vector<double>> points{{}};
  for (const auto& values : axis_values) {
    std::vector<std::vector<double>> next;
    for (const auto& p : points) {
      for (double v : values) {
        next.push_back(p);
        next.back().push_back(v);
      }
    }
    points = std::move(next);
  }

  Table t;
  for (const auto& axis : s.axes) t.columns.push_back(axis.name);
  switch (s.reduction) {
    case Reduction::full_series:
      t.columns.push_back("tau");
      for (const auto& o : base.observables) t.columns.push_back(o.name);
      break;
    case Reduction::dimension:
      t.columns.push_back("dim");
      break;
    default:
      for (const char* c : {"value", "tau", "interior", "dim"}) t.columns.emplace_back(c);
      break;
  }
  t.columns.push_back("error");

  std::vector<std::vector<std::vector<Cell>>> results(points.size());
  unsigned jobs = options.jobs > 0 ? static_cast<unsigned>(options.jobs)
                                   : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(points.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      results[k] = evaluate_point(s, points[k], options, base.observables.size());
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& rows : results) {
    for (auto& row : rows) t.rows.push_back(std::move(row));
  }

  t.metadata["generator"] = "thermoent " + std::string(kVersion);
  if (!s.name.empty()) t.metadata["name"] = s.name;
  if (!s.figure.empty()) t.metadata["figure"] = s.figure;
  if (!s.note.empty()) t.metadata["note"] = s.note;
  t.metadata["sweep"] = to_json(s);
  if (options.epsilon) t.metadata["epsilon_override"] = *options.epsilon;
  t.metadata["peak_threshold"] = kPeakThreshold;
  std::size_t failures = 0;
  const std::size_t err = t.column_index("error");
  for (const auto& row : t.rows) failures += std::get<std::string>(row[err]).empty() ? 0 : 1;
  t.metadata["failed_rows"] = failures;

  if (s.argmax_axis && s.reduction != Reduction::full_series && s.reduction != Reduction::dimension) {
    const std::size_t arg = t.column_index(*s.argmax_axis);
    const std::size_t val = t.column_index("value");
    std::map<std::vector<double>, std::pair<double, double>> best;
    for (const auto& row : t.rows) {
      const double v = std::get<double>(row[val]);
      if (std::isnan(v)) continue;
      std::vector<double> key;
      for (std::size_t a = 0; a < s.axes.size(); ++a) {
        if (a != arg) key.push_back(std::get<double>(row[a]));
      }
      auto it = best.find(key);
      if (it == best.end() || v > it->second.second) best[key] = {std::get<double>(row[arg]), v};
    }
    Json summary = Json::array();
    for (const auto& [key, choice] : best) {
      Json entry;
      std::size_t k = 0;
      for (std::size_t a = 0; a < s.axes.size(); ++a) {
        if (a != arg) entry[s.axes[a].name] = key[k++];
      }
      entry[*s.argmax_axis] = choice.first;
      entry["value"] = choice.second;
      summary.push_back(entry);
    }
    t.metadata["argmax"] = summary;
  }
  return t;
}

// --- convergence ------------------------------------------------------------

Table convergence_study(const ExperimentConfig& config, const std::vector<int>& dims,
                        std::optional<std::string> column) {
  if (dims.empty()) throw ConfigError("convergence study needs at least one dimension");
  for (std::size_t k = 1; k < dims.size(); ++k) {
    if (dims[k] <= dims[k - 1]) throw ConfigError("convergence dims must increase");
  }
  if (mode_labels(config.model.model).empty()) {
    throw ConfigError("convergence study needs a model with oscillator modes");
  }
  std::string col = column.value_or("");
  if (col.empty()) {
    col = config.observables.front().name;
    for (const auto& o : config.observables) {
      if (o.measure == MeasureKind::log_negativity) {
        col = o.name;
        break;
      }
    }
  }

  std::vector<std::vector<double>> series;
  std::vector<double> tau;
  std::vector<Json> meta;
  for (int d : dims) {
    ExperimentConfig c = config;
    c.dims.automatic = false;
    c.dims.extra = 0;
    c.dims.values.clear();
    for (const auto& label : mode_labels(c.model.model)) c.dims.values[label] = d;
    c.dims.tail_tolerance = 1.0;
    Simulation sim(c);
    const std::size_t idx = column_of(sim, col);
    std::vector<double> values;
    tau.clear();
    sim.run([&](double t, const std::vector<double>& v) {
      tau.push_back(t);
      values.push_back(v[idx]);
      return true;
    });
    series.push_back(std::move(values));
  }

  Table t;
  t.columns = {"dim", "peak_value", "peak_tau", "interior", "max_abs_diff"};
  const std::vector<double>& reference = series.back();
  std::vector<double> diffs;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    double diff = 0.0;
    for (std::size_t s = 0; s < reference.size(); ++s) {
      diff = std::max(diff, std::abs(series[k][s] - reference[s]));
    }
    diffs.push_back(diff);
    const PeakResult peak = first_peak(tau, series[k]);
    t.rows.push_back({static_cast<double>(dims[k]), peak.value, peak.tau, peak.interior ? 1.0 : 0.0, diff});
  }
  std::optional<int> converged;
  for (std::size_t k = dims.size(); k-- > 0;) {
    if (diffs[k] >= kConvergenceTolerance) break;
    converged = dims[k];
  }
  t.metadata["generator"] = "thermoent " + std::string(kVersion);
  t.metadata["config"] = to_json(config);
  t.metadata["column"] = col;
  t.metadata["tolerance"] = kConvergenceTolerance;
  t.metadata["reference_dim"] = dims.back();
  if (converged) {
    t.metadata["converged_dim"] = *converged;
  } else {
    t.metadata["converged_dim"] = nullptr;
  }
  return t;
}

}  // namespace thermoent

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

#include "thermoent/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "thermoent/errors.hpp"

namespace thermoent {

double StateSpec::alpha_abs() const {
  if (alpha) return *alpha;
  if (mean) return std::sqrt(*mean);
  return 0.0;
}

PhysicalTrapParams PhysicalModel::params() const {
  PhysicalTrapParams p;
  p.mass = mass_amu * kAtomicMassUnit;
  p.charge = charge_e * kElementaryCharge;
  p.omega_x = omega_x;
  p.omega_z = omega_z;
  p.rabi_frequency = rabi_frequency;
  p.lamb_dicke = lamb_dicke;
  p.detuning = -omega_x;
  return p;
}

std::string_view to_string(StateKind kind) {
  switch (kind) {
    case StateKind::thermal:
      return "thermal";
    case StateKind::fock:
      return "fock";
    case StateKind::coherent:
      return "coherent";
    case StateKind::prcs:
      return "prcs";
  }
  return "?";
}

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::log_negativity:
      return "log_negativity";
    case MeasureKind::concurrence:
      return "concurrence";
    case MeasureKind::entanglement_potential:
      return "entanglement_potential";
    case MeasureKind::excited_population:
      return "excited_population";
    case MeasureKind::ground_fidelity:
      return "ground_fidelity";
    case MeasureKind::purity:
      return "purity";
    case MeasureKind::mean_occupation:
      return "mean_occupation";
  }
  return "?";
}

std::string_view to_string(Reduction kind) {
  switch (kind) {
    case Reduction::first_peak_value:
      return "first_peak_value";
    case Reduction::first_peak_time:
      return "first_peak_time";
    case Reduction::max_value:
      return "max_value";
    case Reduction::full_series:
      return "full_series";
    case Reduction::dimension:
      return "dimension";
  }
  return "?";
}

std::string_view to_string(Refinement kind) {
  return kind == Refinement::golden ? "golden" : "quadratic";
}

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string& text, const Enum (&options)[N], const std::string& what) {
  for (Enum e : options) {
    if (to_string(e) == text) return e;
  }
  std::string names;
  for (Enum e : options) names += (names.empty() ? "" : ", ") + std::string(to_string(e));
  throw ConfigError("unknown " + what + " '" + text + "' (expected one of: " + names + ")");
}

class Reader {
 public:
  Reader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + " must be an object");
  }

  bool has(const std::string& key) {
    used_.insert(key);
    return j_.contains(key);
  }

  const Json& at(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) throw ConfigError(where_ + "." + key + " is required");
    return j_.at(key);
  }

  template <typename T>
  T required(const std::string& key) {
    return convert<T>(at(key), key);
  }

  template <typename T>
  T get(const std::string& key, T fallback) {
    return has(key) ? convert<T>(j_.at(key), key) : fallback;
  }

  template <typename T>
  std::optional<T> optional(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return convert<T>(j_.at(key), key);
  }

  std::string path(const std::string& key) const { return where_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError("unknown key " + where_ + "." + it.key());
    }
  }

 private:
  template <typename T>
  T convert(const Json& value, const std::string& key) const {
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!value.is_number()) throw ConfigError(where_ + "." + key + " must be a number");
        const double v = value.get<double>();
        if (!std::isfinite(v)) throw ConfigError(where_ + "." + key + " must be finite");
        return v;
      } else if constexpr (std::is_same_v<T, int>) {
        if (!value.is_number_integer()) throw ConfigError(where_ + "." + key + " must be an integer");
        return value.get<int>();
      } else {
        return value.get<T>();
      }
    } catch (const Json::exception& e) {
      throw ConfigError(where_ + "." + key + ": " + e.what());
    }
  }

  const Json& j_;
  std::string where_;
  std::set<std::string> used_;
};

StateSpec parse_state(const Json& j, const std::string& where) {
  Reader r(j, where);
  StateSpec s;
  s.kind = parse_enum(r.get<std::string>("kind", "thermal"),
                      {StateKind::thermal, StateKind::fock, StateKind::coherent, StateKind::prcs},
                      "state kind");
  switch (s.kind) {
    case StateKind::thermal:
      s.nbar = r.optional<double>("nbar");
      s.pe = r.optional<double>("pe");
      s.temperature = r.optional<double>("temperature");
      s.frequency = r.optional<double>("frequency");
      if (s.nbar && s.pe) throw ConfigError(where + " sets both nbar and pe");
      break;
    case StateKind::fock:
      s.fock = r.required<int>("n");
      if (s.fock < 0) throw ConfigError(where + ".n must be >= 0");
      break;
    case StateKind::coherent:
    case StateKind::prcs:
      s.alpha = r.optional<double>("alpha");
      s.mean = r.optional<double>("mean");
      if (s.alpha.has_value() == s.mean.has_value()) {
        throw ConfigError(where + " needs exactly one of alpha, mean");
      }
      if (s.alpha && *s.alpha < 0.0) throw ConfigError(where + ".alpha must be >= 0");
      if (s.mean && *s.mean < 0.0) throw ConfigError(where + ".mean must be >= 0");
      if (s.kind == StateKind::coherent) s.phase = r.get<double>("phase", 0.0);
      break;
  }
  r.finish();
  return s;
}

Json state_json(const StateSpec& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  switch (s.kind) {
    case StateKind::thermal:
      if (s.nbar) j["nbar"] = *s.nbar;
      if (s.pe) j["pe"] = *s.pe;
      if (s.temperature) j["temperature"] = *s.temperature;
      if (s.frequency) j["frequency"] = *s.frequency;
      break;
    case StateKind::fock:
      j["n"] = s.fock;
      break;
    case StateKind::coherent:
    case StateKind::prcs:
      if (s.alpha) j["alpha"] = *s.alpha;
      if (s.mean) j["mean"] = *s.mean;
      if (s.kind == StateKind::coherent) j["phase"] = s.phase;
      break;
  }
  return j;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

std::string default_name(const ObservableSpec& o) {
  switch (o.measure) {
    case MeasureKind::log_negativity:
      return "LN_" + join(o.a, "+") + "_" + join(o.b, "+");
    case MeasureKind::concurrence:
      return "C_" + join(o.a, "+") + "_" + join(o.b, "+");
    case MeasureKind::entanglement_potential:
      return "EP_" + o.target;
    case MeasureKind::excited_population:
      return "pe_" + o.target;
    case MeasureKind::ground_fidelity:
      return "F_" + o.target;
    case MeasureKind::purity:
      return o.labels.empty() ? "purity" : "purity_" + join(o.labels, "+");
    case MeasureKind::mean_occupation:
      return "n_" + o.target;
  }
  return "?";
}

ObservableSpec parse_observable(const Json& j, const std::string& where) {
  Reader r(j, where);
  ObservableSpec o;
  o.measure = parse_enum(
      r.required<std::string>("measure"),
      {MeasureKind::log_negativity, MeasureKind::concurrence, MeasureKind::entanglement_potential,
       MeasureKind::excited_population, MeasureKind::ground_fidelity, MeasureKind::purity,
       MeasureKind::mean_occupation},
      "measure");
  switch (o.measure) {
    case MeasureKind::log_negativity:
    case MeasureKind::concurrence:
      o.a = r.required<std::vector<std::string>>("a");
      o.b = r.required<std::vector<std::string>>("b");
      if (o.a.empty() || o.b.empty()) throw ConfigError(where + " needs nonempty a and b");
      if (o.measure == MeasureKind::concurrence && (o.a.size() != 1 || o.b.size() != 1)) {
        throw ConfigError(where + ": concurrence takes one qubit on each side");
      }
      break;
    case MeasureKind::purity:
      o.labels = r.get<std::vector<std::string>>("labels", {});
      break;
    default:
      o.target = r.required<std::string>("target");
      break;
  }
  o.name = r.get<std::string>("name", default_name(o));
  if (o.name.empty() || o.name == "tau") throw ConfigError(where + ".name is reserved or empty");
  r.finish();
  return o;
}

Json observable_json(const ObservableSpec& o) {
  Json j;
  j["name"] = o.name;
  j["measure"] = to_string(o.measure);
  switch (o.measure) {
    case MeasureKind::log_negativity:
    case MeasureKind::concurrence:
      j["a"] = o.a;
      j["b"] = o.b;
      break;
    case MeasureKind::purity:
      j["labels"] = o.labels;
      break;
    default:
      j["target"] = o.target;
      break;
  }
  return j;
}

}  // namespace

ExperimentConfig parse_experiment(const Json& doc) {
  Reader r(doc, "experiment");
  ExperimentConfig c;
  c.name = r.get<std::string>("name", "");
  c.figure = r.get<std::string>("figure", "");
  c.note = r.get<std::string>("note", "");

  {
    Reader m(r.at("model"), "model");
    try {
      c.model.model = parse_model_kind(m.required<std::string>("kind"));
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    c.model.base_coupling = m.get<double>("base_coupling", 1.0);
    if (!(c.model.base_coupling > 0.0)) throw ConfigError("model.base_coupling must be positive");
    if (m.has("ratios")) {
      Reader ratios(r.at("model").at("ratios"), "model.ratios");
      for (auto it = doc.at("model").at("ratios").begin(); it != doc.at("model").at("ratios").end(); ++it) {
        c.model.ratios[it.key()] = ratios.required<double>(it.key());
      }
      ratios.finish();
    }
    if (m.has("phases")) {
      Reader phases(doc.at("model").at("phases"), "model.phases");
      for (auto it = doc.at("model").at("phases").begin(); it != doc.at("model").at("phases").end(); ++it) {
        c.model.phases[it.key()] = phases.required<double>(it.key());
      }
      phases.finish();
    }
    if (m.has("physical")) {
      Reader p(doc.at("model").at("physical"), "model.physical");
      PhysicalModel phys;
      phys.mass_amu = p.get<double>("mass_amu", 40.0);
      phys.charge_e = p.get<double>("charge_e", 1.0);
      phys.omega_x = p.required<double>("omega_x");
      phys.omega_z = p.required<double>("omega_z");
      phys.rabi_frequency = p.required<double>("rabi_frequency");
      phys.lamb_dicke = p.required<double>("lamb_dicke");
      p.finish();
      if (c.model.model != ModelKind::one_side) {
        throw ConfigError("model.physical is only supported for model 1S");
      }
      c.physical = phys;
    }
    m.finish();
  }

  {
    Reader init(r.at("initial"), "initial");
    for (auto it = doc.at("initial").begin(); it != doc.at("initial").end(); ++it) {
      c.initial[it.key()] = parse_state(init.at(it.key()), "initial." + it.key());
    }
    init.finish();
  }

  if (r.has("bath")) {
    Reader b(doc.at("bath"), "bath");
    BathSpec bath;
    const Json& channels = b.at("channels");
    if (!channels.is_array()) throw ConfigError("bath.channels must be an array");
    for (std::size_t k = 0; k < channels.size(); ++k) {
      const std::string where = "bath.channels." + std::to_string(k);
      Reader ch(channels[k], where);
      BathChannel channel;
      try {
        channel.kind = parse_channel_kind(ch.required<std::string>("kind"));
      } catch (const InvalidArgument& e) {
        throw ConfigError(where + ": " + e.what());
      }
      channel.target = ch.required<std::string>("target");
      channel.rate = ch.required<double>("rate");
      channel.occupancy = ch.get<double>("occupancy", 0.0);
      ch.finish();
      bath.channels.push_back(channel);
    }
    b.finish();
    try {
      bath.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    c.bath = bath;
  }

  if (r.has("grid")) {
    Reader g(doc.at("grid"), "grid");
    c.grid.start = g.get<double>("start", 0.0);
    c.grid.end = g.get<double>("end", 15.0);
    c.grid.samples = g.get<int>("samples", 600);
    g.finish();
  }
  try {
    c.grid.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }

  {
    const Json& obs = r.at("observables");
    if (!obs.is_array() || obs.empty()) throw ConfigError("observables must be a nonempty array");
    std::set<std::string> names;
    for (std::size_t k = 0; k < obs.size(); ++k) {
      ObservableSpec o = parse_observable(obs[k], "observables." + std::to_string(k));
      if (!names.insert(o.name).second) throw ConfigError("duplicate observable name '" + o.name + "'");
      c.observables.push_back(std::move(o));
    }
  }

  if (r.has("dims")) {
    Reader d(doc.at("dims"), "dims");
    c.dims.automatic = d.get<bool>("auto", true);
    c.dims.epsilon = d.get<double>("epsilon", kDefaultTailTolerance);
    c.dims.guard = d.get<int>("guard", kGuardLevels);
    c.dims.extra = d.get<int>("extra", 0);
    c.dims.tail_tolerance = d.optional<double>("tail_tolerance");
    if (d.has("values")) {
      Reader v(doc.at("dims").at("values"), "dims.values");
      for (auto it = doc.at("dims").at("values").begin(); it != doc.at("dims").at("values").end(); ++it) {
        c.dims.values[it.key()] = v.required<int>(it.key());
        if (c.dims.values[it.key()] < 2) throw ConfigError("dims.values." + it.key() + " must be >= 2");
      }
      v.finish();
    }
    d.finish();
  }
  if (!(c.dims.epsilon > 0.0)) throw ConfigError("dims.epsilon must be positive");
  if (c.dims.guard < 0 || c.dims.extra < 0) throw ConfigError("dims.guard and dims.extra must be >= 0");
  if (c.dims.tail_tolerance && !(*c.dims.tail_tolerance > 0.0)) {
    throw ConfigError("dims.tail_tolerance must be positive");
  }

  if (r.has("step")) {
    Reader s(doc.at("step"), "step");
    c.step.initial_step = s.get<double>("initial_step", 0.0);
    c.step.tolerance = s.get<double>("tolerance", 1e-7);
    c.step.max_halvings = s.get<int>("max_halvings", 8);
    c.step.trace_drift = s.get<double>("trace_drift", 1e-9);
    s.finish();
    if (c.step.initial_step < 0.0 || !(c.step.tolerance > 0.0) || c.step.max_halvings < 0 ||
        !(c.step.trace_drift > 0.0)) {
      throw ConfigError("step settings out of range");
    }
  }
  r.finish();
  return c;
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  if (!c.name.empty()) j["name"] = c.name;
  if (!c.figure.empty()) j["figure"] = c.figure;
  if (!c.note.empty()) j["note"] = c.note;
  Json model;
  model["kind"] = to_string(c.model.model);
  model["base_coupling"] = c.model.base_coupling;
  model["ratios"] = Json::object();
  for (const auto& [k, v] : c.model.ratios) model["ratios"][k] = v;
  if (!c.model.phases.empty()) {
    for (const auto& [k, v] : c.model.phases) model["phases"][k] = v;
  }
  if (c.physical) {
    model["physical"] = {{"mass_amu", c.physical->mass_amu},
                         {"charge_e", c.physical->charge_e},
                         {"omega_x", c.physical->omega_x},
                         {"omega_z", c.physical->omega_z},
                         {"rabi_frequency", c.physical->rabi_frequency},
                         {"lamb_dicke", c.physical->lamb_dicke}};
  }
  j["model"] = model;
  j["initial"] = Json::object();
  for (const auto& [label, s] : c.initial) j["initial"][label] = state_json(s);
  if (c.bath) {
    Json channels = Json::array();
    for (const auto& ch : c.bath->channels) {
      channels.push_back({{"kind", to_string(ch.kind)},
                          {"target", ch.target},
                          {"rate", ch.rate},
                          {"occupancy", ch.occupancy}});
    }
    j["bath"] = {{"channels", channels}};
  }
  j["grid"] = {{"start", c.grid.start}, {"end", c.grid.end}, {"samples", c.grid.samples}};
  j["observables"] = Json::array();
  for (const auto& o : c.observables) j["observables"].push_back(observable_json(o));
  Json dims = {{"auto", c.dims.automatic},
               {"epsilon", c.dims.epsilon},
               {"guard", c.dims.guard},
               {"extra", c.dims.extra}};
  if (!c.dims.values.empty()) {
    for (const auto& [k, v] : c.dims.values) dims["values"][k] = v;
  }
  if (c.dims.tail_tolerance) dims["tail_tolerance"] = *c.dims.tail_tolerance;
  j["dims"] = dims;
  j["step"] = {{"initial_step", c.step.initial_step},
               {"tolerance", c.step.tolerance},
               {"max_halvings", c.step.max_halvings},
               {"trace_drift", c.step.trace_drift}};
  return j;
}

bool is_sweep_document(const Json& doc) { return doc.is_object() && doc.contains("axes"); }

SweepConfig parse_sweep(const Json& doc) {
  Reader r(doc, "sweep");
  SweepConfig s;
  s.name = r.get<std::string>("name", "");
  s.figure = r.get<std::string>("figure", "");
  s.note = r.get<std::string>("note", "");
  s.base = r.at("base");
  const ExperimentConfig base = parse_experiment(s.base);

  const Json& axes = r.at("axes");
  if (!axes.is_array() || axes.empty()) throw ConfigError("sweep.axes must be a nonempty array");
  std::set<std::string> names;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const std::string where = "sweep.axes." + std::to_string(k);
    Reader a(axes[k], where);
    SweepAxis axis;
    if (a.has("path")) axis.paths.push_back(a.required<std::string>("path"));
    if (a.has("paths")) {
      for (const auto& p : a.required<std::vector<std::string>>("paths")) axis.paths.push_back(p);
    }
    if (axis.paths.empty()) throw ConfigError(where + " needs path or paths");
    axis.name = a.get<std::string>("name", axis.paths.front());
    const Json& values = a.at("values");
    if (!values.is_array() || values.empty()) throw ConfigError(where + ".values must be a nonempty array");
    for (const auto& v : values) {
      if (!v.is_number() || !std::isfinite(v.get<double>())) {
        throw ConfigError(where + ".values must be finite numbers");
      }
      axis.values.push_back(v.get<double>());
    }
    a.finish();
    if (!names.insert(axis.name).second) throw ConfigError("duplicate axis name '" + axis.name + "'");
    s.axes.push_back(std::move(axis));
  }
  s.reduction = parse_enum(r.get<std::string>("reduction", "first_peak_value"),
                           {Reduction::first_peak_value, Reduction::first_peak_time,
                            Reduction::max_value, Reduction::full_series, Reduction::dimension},
                           "reduction");
  s.column = r.get<std::string>("column", base.observables.front().name);
  bool found = false;
  for (const auto& o : base.observables) found = found || o.name == s.column;
  if (!found) throw ConfigError("sweep.column '" + s.column + "' is not an observable of the base");
  s.refine = parse_enum(r.get<std::string>("refine", "quadratic"),
                        {Refinement::quadratic, Refinement::golden}, "refinement");
  s.argmax_axis = r.optional<std::string>("argmax_axis");
  if (s.argmax_axis && !names.count(*s.argmax_axis)) {
    throw ConfigError("sweep.argmax_axis '" + *s.argmax_axis + "' is not an axis");
  }
  r.finish();
  return s;
}

Json to_json(const SweepConfig& s) {
  Json j;
  if (!s.name.empty()) j["name"] = s.name;
  if (!s.figure.empty()) j["figure"] = s.figure;
  if (!s.note.empty()) j["note"] = s.note;
  j["base"] = s.base;
  j["axes"] = Json::array();
  for (const auto& a : s.axes) {
    Json axis = {{"name", a.name}};
    if (a.paths.size() == 1) {
      axis["path"] = a.paths.front();
    } else {
      axis["paths"] = a.paths;
    }
    axis["values"] = a.values;
    j["axes"].push_back(axis);
  }
  j["reduction"] = to_string(s.reduction);
  j["column"] = s.column;
  j["refine"] = to_string(s.refine);
  if (s.argmax_axis) j["argmax_axis"] = *s.argmax_axis;
  return j;
}

void set_path(Json& doc, const std::string& path, double value) {
  std::vector<std::string> tokens;
  std::stringstream ss(path);
  for (std::string t; std::getline(ss, t, '.');) {
    if (t.empty()) throw ConfigError("malformed path '" + path + "'");
    tokens.push_back(t);
  }
  if (tokens.empty()) throw ConfigError("empty path");
  Json* node = &doc;
  for (std::size_t k = 0; k + 1 < tokens.size(); ++k) {
    const std::string& t = tokens[k];
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(t);
      } catch (const std::exception&) {
        throw ConfigError("path '" + path + "': '" + t + "' is not an array index");
      }
      if (idx >= node->size()) throw ConfigError("path '" + path + "': index out of range");
      node = &(*node)[idx];
    } else if (node->is_object() && node->contains(t)) {
      node = &(*node)[t];
    } else {
      throw ConfigError("path '" + path + "' does not exist in the base config");
    }
  }
  const std::string& leaf = tokens.back();
  if (node->is_array()) throw ConfigError("path '" + path + "' ends at an array element");
  if (!node->is_object()) throw ConfigError("path '" + path + "' does not exist in the base config");
  const bool integral = node->contains(leaf) && (*node)[leaf].is_number_integer();
  if (integral) {
    if (value != std::floor(value)) throw ConfigError("path '" + path + "' needs an integer");
    (*node)[leaf] = static_cast<long long>(value);
  } else {
    (*node)[leaf] = value;
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
}

}  // namespace thermoent

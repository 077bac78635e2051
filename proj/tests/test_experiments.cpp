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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "thermoent/errors.hpp"
#include "thermoent/experiments.hpp"

using namespace thermoent;

namespace {

Json small_1s(double r = 0.18, double n1 = 1.0) {
  return Json::parse(R"({
    "model": {"kind": "1S", "ratios": {"r_1S": 0.18}},
    "initial": {"q": {"kind": "thermal", "pe": 0.0},
                "m1": {"kind": "thermal", "nbar": 1.0},
                "m2": {"kind": "thermal", "nbar": 0.0}},
    "grid": {"start": 0.0, "end": 6.0, "samples": 121},
    "observables": [{"measure": "log_negativity", "a": ["m1"], "b": ["m2"]}],
    "dims": {"auto": false, "values": {"m1": 8, "m2": 8}, "tail_tolerance": 1.0}
  })")
      .patch(Json::array({{{"op", "replace"}, {"path", "/model/ratios/r_1S"}, {"value", r}},
                          {{"op", "replace"}, {"path", "/initial/m1/nbar"}, {"value", n1}}}));
}

std::string csv(const Table& t) {
  std::ostringstream out;
  write_csv(t, out);
  return out.str();
}

std::vector<double> column(const Table& t, const std::string& name) {
  std::vector<double> out;
  for (const auto& c : t.numeric(name)) out.push_back(c);
  return out;
}

}  // namespace

TEST_CASE("first peak of a sine") {
  std::vector<double> tau, v;
  for (int k = 0; k <= 200; ++k) {
    tau.push_back(2.0 * std::numbers::pi * k / 200.0 + 0.013);
    v.push_back(std::sin(tau.back()));
  }
  const PeakResult p = first_peak(tau, v);
  CHECK(p.interior);
  CHECK(std::abs(p.tau - std::numbers::pi / 2) < 1e-4);
  CHECK(std::abs(p.value - 1.0) < 1e-4);
}

TEST_CASE("first peak corner cases") {
  const PeakResult mono = first_peak({0, 1, 2, 3}, {0, 1, 2, 3});
  CHECK_FALSE(mono.interior);
  CHECK(mono.tau == 3.0);
  CHECK(mono.value == 3.0);
  CHECK_THROWS_AS(first_peak({0, 1}, {0, 1}), InvalidArgument);
  // Later, higher peak is ignored.
  const PeakResult early = first_peak({0, 1, 2, 3, 4, 5}, {0, 0.5, 0.2, 0.9, 2.0, 1.0});
  CHECK(early.index == 1);
  // Sub-threshold wiggles are not peaks.
  const PeakResult tiny = first_peak({0, 1, 2, 3, 4}, {0, 1e-8, 0, 0.5, 1.0});
  CHECK_FALSE(tiny.interior);
}

TEST_CASE("peak tracker agrees with the batch rule") {
  std::vector<double> tau, v;
  FirstPeakTracker tracker;
  for (int k = 0; k < 100; ++k) {
    tau.push_back(0.05 * k);
    v.push_back(std::sin(1.3 * tau.back()) * std::exp(-0.1 * tau.back()));
    if (tracker.push(tau.back(), v.back())) break;
  }
  const PeakResult batch = first_peak(tau, v);
  CHECK(tracker.found());
  CHECK(tracker.result().tau == doctest::Approx(batch.tau));
  CHECK(tracker.result().value == doctest::Approx(batch.value));
}

TEST_CASE("parabola and golden search") {
  auto f = [](double x) { return -2.0 * (x - 0.3) * (x - 0.3) + 1.5; };
  const auto [x, y] = parabola_vertex(0.0, f(0.0), 0.25, f(0.25), 0.7, f(0.7));
  CHECK(x == doctest::Approx(0.3));
  CHECK(y == doctest::Approx(1.5));
  const auto [gx, gy] = golden_maximize([](double t) { return std::cos(t - 0.4); }, 0.0, 1.0);
  CHECK(std::abs(gx - 0.4) < 1e-6);
  CHECK(std::abs(gy - 1.0) < 1e-12);
}

TEST_CASE("config parsing is strict") {
  Json doc = small_1s();
  CHECK_NOTHROW(parse_experiment(doc));
  doc["grid"]["sample"] = 3;
  CHECK_THROWS_AS(parse_experiment(doc), ConfigError);
  doc = small_1s();
  doc["initial"].erase("m2");
  CHECK_THROWS_AS(Simulation(parse_experiment(doc)), ConfigError);
  doc = small_1s();
  doc["observables"] = Json::array();
  CHECK_THROWS_AS(parse_experiment(doc), ConfigError);
  doc = small_1s();
  doc["observables"][0]["b"] = Json::array({"m3"});
  CHECK_THROWS_AS(Simulation(parse_experiment(doc)), ConfigError);
}

TEST_CASE("config round trip") {
  const ExperimentConfig c = parse_experiment(small_1s());
  const ExperimentConfig again = parse_experiment(to_json(c));
  CHECK(to_json(again) == to_json(c));
  CHECK(c.observables.front().name == "LN_m1_m2");
}

TEST_CASE("set_path") {
  Json doc = small_1s();
  set_path(doc, "initial.m1.nbar", 2.5);
  CHECK(doc["initial"]["m1"]["nbar"] == 2.5);
  set_path(doc, "dims.values.m1", 9.0);
  CHECK(doc["dims"]["values"]["m1"].is_number_integer());
  CHECK_THROWS_AS(set_path(doc, "dims.values.m1", 9.5), ConfigError);
  CHECK_THROWS_AS(set_path(doc, "nothing.here", 1.0), ConfigError);
  set_path(doc, "observables.0.name", 0.0);
  CHECK(doc["observables"][0]["name"] == 0.0);
}

TEST_CASE("automatic dimensions") {
  Json doc = small_1s();
  doc["dims"] = {{"epsilon", 1e-6}};
  auto dims = resolve_dims(parse_experiment(doc));
  CHECK(dims["m1"] == 24);
  CHECK(dims["m2"] == 24);
  doc["dims"]["extra"] = 5;
  dims = resolve_dims(parse_experiment(doc));
  CHECK(dims["m2"] == 29);
  doc["dims"] = {{"values", {{"m2", 7}}}};
  dims = resolve_dims(parse_experiment(doc));
  CHECK(dims["m1"] == 24);
  CHECK(dims["m2"] == 7);
  doc["dims"] = {{"values", {{"q", 7}}}};
  CHECK_THROWS_AS(resolve_dims(parse_experiment(doc)), ConfigError);
}

TEST_CASE("run is deterministic and starts unentangled") {
  const ExperimentConfig c = parse_experiment(small_1s(0.18, 2.0));
  const Table a = run(c);
  const Table b = run(c);
  CHECK(csv(a) == csv(b));
  const auto ln = column(a, "LN_m1_m2");
  CHECK(ln.front() == 0.0);
  const PeakResult p = first_peak(column(a, "tau"), ln);
  CHECK(p.value > 1e-3);
  CHECK(a.metadata["dims"]["m1"] == 8);
}

TEST_CASE("zero coupling produces no correlations") {
  const Table t = run(parse_experiment(small_1s(0.0, 2.0)));
  for (double v : column(t, "LN_m1_m2")) CHECK(v == 0.0);
}

TEST_CASE("csv layout") {
  const Table t = run(parse_experiment(small_1s()));
  const std::string text = csv(t);
  CHECK(text.rfind("# {", 0) == 0);
  CHECK(text.find("\r") == std::string::npos);
  CHECK(text.find("\ntau,LN_m1_m2\n") != std::string::npos);
  CHECK(format_number(0.1) == "1.0000000000000001e-01");
  std::ostringstream json;
  write_table(t, json, OutputFormat::json);
  const Json parsed = Json::parse(json.str());
  CHECK(parsed["columns"]["tau"].size() == 121);
}

TEST_CASE("sweep ordering and single point") {
  SweepConfig s;
  s.base = small_1s();
  s.axes = {{"nbar1", {"initial.m1.nbar"}, {1.0, 0.5}}};
  s.column = "LN_m1_m2";
  const Table t = sweep(s, {.jobs = 2});
  REQUIRE(t.rows.size() == 2);
  CHECK(std::get<double>(t.rows[0][0]) == 0.5);
  CHECK(std::get<double>(t.rows[1][0]) == 1.0);

  const Table single = run(parse_experiment(small_1s()));
  const PeakResult p = first_peak(column(single, "tau"), column(single, "LN_m1_m2"));
  CHECK(std::get<double>(t.rows[1][t.column_index("value")]) == doctest::Approx(p.value).epsilon(1e-12));
  CHECK(std::get<double>(t.rows[1][t.column_index("tau")]) == doctest::Approx(p.tau).epsilon(1e-12));
}

TEST_CASE("sweep records per-point failures") {
  SweepConfig s;
  s.base = small_1s();
  s.axes = {{"nbar1", {"initial.m1.nbar"}, {-1.0, 0.5}}};
  s.column = "LN_m1_m2";
  const Table t = sweep(s, {.jobs = 1});
  REQUIRE(t.rows.size() == 2);
  CHECK_FALSE(std::get<std::string>(t.rows[0].back()).empty());
  CHECK(std::isnan(std::get<double>(t.rows[0][1])));
  CHECK(std::get<std::string>(t.rows[1].back()).empty());
  CHECK(t.metadata["failed_rows"] == 1);
}

TEST_CASE("1M sweep is symmetric under mode swap") {
  Json base = small_1s();
  base["model"] = {{"kind", "1M"}, {"ratios", {{"r_1M", 1.0}}}};
  base["dims"]["values"] = {{"m1", 6}, {"m2", 6}};
  SweepConfig s;
  s.base = base;
  s.axes = {{"n1", {"initial.m1.nbar"}, {0.0, 0.5}}, {"n2", {"initial.m2.nbar"}, {0.0, 0.5}}};
  s.column = "LN_m1_m2";
  const Table t = sweep(s, {.jobs = 1});
  REQUIRE(t.rows.size() == 4);
  const std::size_t v = t.column_index("value");
  CHECK(std::abs(std::get<double>(t.rows[1][v]) - std::get<double>(t.rows[2][v])) < 1e-8);
}

TEST_CASE("convergence study") {
  Json doc = small_1s(0.18, 0.0);
  const Table t = convergence_study(parse_experiment(doc), {4, 6, 8});
  for (double d : column(t, "max_abs_diff")) CHECK(d < 1e-10);
  CHECK(t.metadata["converged_dim"] == 4);
  CHECK_THROWS_AS(convergence_study(parse_experiment(doc), {6, 4}), ConfigError);
}

TEST_CASE("open systems refuse off-grid observation") {
  Json doc = small_1s();
  doc["bath"] = {{"channels", Json::array({{{"kind", "qubit_dephasing"}, {"target", "q"}, {"rate", 0.1}}})}};
  Simulation sim(parse_experiment(doc));
  CHECK(sim.open());
  CHECK_THROWS_AS(sim.observe_at(1.0), InvalidArgument);
}

TEST_CASE("presets") {
  CHECK_THROWS_AS(preset("fig99"), UnknownPreset);
  try {
    preset("fig99");
  } catch (const UnknownPreset& e) {
    CHECK(std::string(e.what()).find("fig1a") != std::string::npos);
  }
  for (const auto& p : presets()) {
    CAPTURE(p.name);
    CHECK_FALSE(p.figure.empty());
    if (is_sweep_document(p.document)) {
      CHECK_NOTHROW(parse_sweep(p.document));
    } else {
      CHECK_NOTHROW(parse_experiment(p.document));
    }
  }
  const SweepConfig a = parse_sweep(preset("fig1a").document);
  const ExperimentConfig base = parse_experiment(a.base);
  CHECK(base.model.model == ModelKind::one_side);
  CHECK(base.model.ratios.at("r_1S") == 0.18);
  CHECK(base.initial.at("q").pe == 0.0);
  CHECK(base.initial.at("m2").nbar == 0.0);
  const SweepConfig c = parse_sweep(preset("fig1c").document);
  CHECK(parse_experiment(c.base).model.ratios.at("r_1M") == 1.0);
  const SweepConfig three = parse_sweep(preset("s6-threequbit").document);
  CHECK(three.axes.front().values == std::vector<double>{0.5, 0.63});
}

TEST_CASE("trap parameters of the hopping preset") {
  Simulation sim(parse_experiment(preset("hopping-experiment").document));
  const Json meta = sim.metadata();
  CHECK(meta["derived"]["r_1S"].get<double>() == doctest::Approx(0.32).epsilon(0.01));
  CHECK(sim.config().model.ratios.at("r_1S") == meta["derived"]["r_1S"].get<double>());
}

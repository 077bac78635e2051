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

#include <cmath>
#include <numbers>

#include "thermoent/errors.hpp"
#include "thermoent/experiments.hpp"

namespace thermoent {
namespace {

Json thermal(double nbar) { return {{"kind", "thermal"}, {"nbar", nbar}}; }
Json qubit(double pe) { return {{"kind", "thermal"}, {"pe", pe}}; }

Json ln(const std::string& a, const std::string& b) {
  return {{"measure", "log_negativity"}, {"a", Json::array({a})}, {"b", Json::array({b})}};
}
Json single(const std::string& measure, const std::string& target) {
  return {{"measure", measure}, {"target", target}};
}
Json pair_measure(const std::string& measure, const std::string& a, const std::string& b) {
  return {{"measure", measure}, {"a", Json::array({a})}, {"b", Json::array({b})}};
}

Json grid(double end = 15.0, int samples = 600) {
  return {{"start", 0.0}, {"end", end}, {"samples", samples}};
}

// Single-qubit model with thermal modes.
Json one_qubit(const std::string& model, double r, double n1, double n2, double pe = 0.0) {
  const std::string key = model == "1S" ? "r_1S" : "r_1M";
  return {{"model", {{"kind", model}, {"ratios", {{key, r}}}}},
          {"initial", {{"q", qubit(pe)}, {"m1", thermal(n1)}, {"m2", thermal(n2)}}},
          {"grid", grid()},
          {"observables", Json::array({ln("m1", "m2")})}};
}

Json with_dims(Json doc, double epsilon) {
  doc["dims"] = {{"epsilon", epsilon}};
  return doc;
}

Json axis(const std::string& name, const std::string& path, const std::vector<double>& values) {
  return {{"name", name}, {"path", path}, {"values", values}};
}
Json axis(const std::string& name, const std::vector<std::string>& paths,
          const std::vector<double>& values) {
  return {{"name", name}, {"paths", paths}, {"values", values}};
}

Json sweep_doc(const std::string& name, const std::string& figure, const std::string& note, Json base,
               Json axes, const std::string& reduction) {
  return {{"name", name}, {"figure", figure}, {"note", note},
          {"base", std::move(base)}, {"axes", std::move(axes)}, {"reduction", reduction}};
}

Json run_doc(const std::string& name, const std::string& figure, const std::string& note, Json doc) {
  Json out = {{"name", name}, {"figure", figure}, {"note", note}};
  for (auto it = doc.begin(); it != doc.end(); ++it) out[it.key()] = it.value();
  return out;
}

std::vector<double> nbar_grid() {
  std::vector<double> v;
  for (int k = 0; k <= 20; ++k) v.push_back(0.25 * k);
  return v;
}

Json bath(const std::vector<Json>& channels) { return {{"channels", channels}}; }
Json channel(const std::string& kind, const std::string& target, double rate, double occupancy = 0.0) {
  return {{"kind", kind}, {"target", target}, {"rate", rate}, {"occupancy", occupancy}};
}

Json three_qubit(double k2, double pe) {
  return {{"model", {{"kind", "3Q"}, {"ratios", {{"k2_over_k1", k2}}}}},
          {"initial", {{"q1", qubit(pe)}, {"q2", qubit(0.0)}, {"q3", qubit(0.0)}}},
          {"grid", grid(20.0, 2001)},
          {"observables", Json::array({ln("q2", "q3")})}};
}

Json two_side(double bs, double b, double n1, double n2) {
  return {{"model", {{"kind", "2S"}, {"ratios", {{"r_2S_BS", bs}, {"r_2S_b", b}}}}},
          {"initial", {{"qa", qubit(0.0)}, {"qb", qubit(0.0)}, {"m1", thermal(n1)}, {"m2", thermal(n2)}}},
          {"grid", grid()},
          {"observables", Json::array({ln("m1", "m2")})}};
}

Json two_middle(double b, double a2, double n1, double n2) {
  return {{"model", {{"kind", "2M"}, {"ratios", {{"r_2M_b1", b}, {"r_2M_b2", b}, {"r_2M_a2", a2}}}}},
          {"initial", {{"qa", qubit(0.0)}, {"qb", qubit(0.0)}, {"m1", thermal(n1)}, {"m2", thermal(n2)}}},
          {"grid", grid()},
          {"observables", Json::array({ln("m1", "m2")})}};
}

Json all_pairs(const std::vector<std::string>& labels) {
  Json obs = Json::array();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) obs.push_back(ln(labels[i], labels[j]));
  }
  return obs;
}

// Decoherence study on 1S at r = 0.18, one rate axis shared by the listed channels.
Json dissipation(const std::string& name, const std::string& figure, const std::string& note,
                 double n1, const std::vector<std::string>& kinds, const std::vector<double>& rates,
                 double occupancy = 0.0) {
  Json doc = one_qubit("1S", 0.18, n1, 0.0);
  std::vector<Json> channels;
  std::vector<std::string> paths;
  for (const auto& kind : kinds) {
    const bool mode = kind == "mode_damping";
    for (const char* target : mode ? std::vector<const char*>{"m1", "m2"} : std::vector<const char*>{"q"}) {
      paths.push_back("bath.channels." + std::to_string(channels.size()) + ".rate");
      channels.push_back(channel(kind, target, rates.front(), occupancy));
    }
  }
  doc["bath"] = bath(channels);
  doc["step"] = {{"tolerance", 1e-10}};
  return sweep_doc(name, figure, note, doc, Json::array({axis("rate", paths, rates)}), "full_series");
}

Json thermal_environment(const std::string& name, const std::string& note,
                         const std::vector<std::string>& kinds) {
  Json doc = one_qubit("1S", 0.18, 1.0, 0.0);
  std::vector<Json> channels;
  std::vector<std::string> paths;
  for (const auto& kind : kinds) {
    const bool mode = kind == "mode_damping";
    for (const char* target : mode ? std::vector<const char*>{"m1", "m2"} : std::vector<const char*>{"q"}) {
      if (kind != "qubit_dephasing") {
        paths.push_back("bath.channels." + std::to_string(channels.size()) + ".occupancy");
      }
      channels.push_back(channel(kind, target, 0.05, 0.0));
    }
  }
  doc["bath"] = bath(channels);
  doc["step"] = {{"tolerance", 1e-10}};
  return sweep_doc(name, "Supplement Fig. S4", note, doc,
                   Json::array({axis("n_th", paths, {0.0, 0.1, 0.5, 1.0})}), "full_series");
}

Json resource(const std::string& name, const std::string& figure, const std::string& note,
              const std::string& model, double r, const std::string& kind) {
  Json doc = one_qubit(model, r, 0.0, 0.0);
  doc["initial"]["m1"] = {{"kind", kind}, {"mean", 1.0}};
  return sweep_doc(name, figure, note, doc,
                   Json::array({axis("mean", "initial.m1.mean", {0.5, 1.0, 2.0, 3.0, 4.0})}),
                   "first_peak_value");
}

std::vector<Preset> build() {
  std::vector<Preset> out;
  auto add = [&](Json doc) {
    const std::string name = doc.at("name");
    const std::string figure = doc.at("figure");
    const std::string note = doc.at("note");
    out.push_back({name, figure, note, std::move(doc)});
  };
  const std::vector<double> curves{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> n = nbar_grid();

  add(sweep_doc("fig1a", "Fig. 1(a)", "1S, r=0.18, qubit ground, nbar2=0, LN(tau) for several nbar1",
                one_qubit("1S", 0.18, 1.0, 0.0),
                Json::array({axis("nbar1", "initial.m1.nbar", curves)}), "full_series"));
  add(sweep_doc("fig1b", "Fig. 1(b)", "1S, r=0.5, qubit ground, nbar1=0, LN(tau) for several nbar2",
                one_qubit("1S", 0.5, 0.0, 1.0),
                Json::array({axis("nbar2", "initial.m2.nbar", curves)}), "full_series"));
  add(sweep_doc("fig1c", "Fig. 1(c)", "1M, r=1, qubit ground, nbar2=0, LN(tau) for several nbar1",
                one_qubit("1M", 1.0, 1.0, 0.0),
                Json::array({axis("nbar1", "initial.m1.nbar", curves)}), "full_series"));

  const std::string fig2 = "nbar grid 0..5 step 0.25 and ratio lists are a reconstruction; ";
  add(sweep_doc("fig2a", "Fig. 2(a)", fig2 + "1S, r=0.18, nbar2=0, first-peak LN vs nbar1",
                with_dims(one_qubit("1S", 0.18, 0.0, 0.0), 1e-8),
                Json::array({axis("nbar1", "initial.m1.nbar", n)}), "first_peak_value"));
  {
    Json s = sweep_doc("fig2a-ratios", "Fig. 2(a)", fig2 + "1S, nbar2=0, first-peak LN vs nbar1 per ratio",
                       with_dims(one_qubit("1S", 0.18, 0.0, 0.0), 1e-8),
                       Json::array({axis("r_1S", "model.ratios.r_1S", {0.05, 0.1, 0.18, 0.32, 0.5, 1.0}),
                                    axis("nbar1", "initial.m1.nbar", n)}),
                       "first_peak_value");
    s["argmax_axis"] = "r_1S";
    add(s);
  }
  {
    Json s = sweep_doc("fig2b", "Fig. 2(b)", fig2 + "1S, nbar1=0, first-peak LN vs nbar2 per ratio",
                       with_dims(one_qubit("1S", 0.5, 0.0, 0.0), 1e-8),
                       Json::array({axis("r_1S", "model.ratios.r_1S", {0.18, 0.32, 0.5, 1.0, 2.0}),
                                    axis("nbar2", "initial.m2.nbar", n)}),
                       "first_peak_value");
    s["argmax_axis"] = "r_1S";
    add(s);
  }
  add(sweep_doc("fig2c", "Fig. 2(c)", fig2 + "1S, r=0.18, nbar2=0, first-peak LN vs nbar1 per qubit pe",
                with_dims(one_qubit("1S", 0.18, 0.0, 0.0), 1e-8),
                Json::array({axis("pe", "initial.q.pe", {0.0, 0.1, 0.2, 0.3}),
                             axis("nbar1", "initial.m1.nbar", n)}),
                "first_peak_value"));
  add(sweep_doc("fig2d", "Fig. 2(d)", fig2 + "1S, r=1, first-peak LN vs nbar2 per nbar1",
                with_dims(one_qubit("1S", 1.0, 0.0, 0.0), 1e-8),
                Json::array({axis("nbar1", "initial.m1.nbar", {0.0, 0.25, 0.5, 1.0}),
                             axis("nbar2", "initial.m2.nbar", n)}),
                "first_peak_value"));
  {
    Json s = sweep_doc("fig2e", "Fig. 2(e)", fig2 + "1M, nbar2=0, first-peak LN vs nbar1 per ratio",
                       with_dims(one_qubit("1M", 1.0, 0.0, 0.0), 1e-8),
                       Json::array({axis("r_1M", "model.ratios.r_1M", {0.25, 0.5, 1.0, 1.5, 2.0}),
                                    axis("nbar1", "initial.m1.nbar", n)}),
                       "first_peak_value");
    s["argmax_axis"] = "r_1M";
    add(s);
  }
  {
    Json s = sweep_doc("fig2f", "Fig. 2(f)", fig2 + "1M, nbar1=0, first-peak LN vs nbar2 per ratio",
                       with_dims(one_qubit("1M", 1.0, 0.0, 0.0), 1e-8),
                       Json::array({axis("r_1M", "model.ratios.r_1M", {0.25, 0.5, 1.0, 1.5, 2.0}),
                                    axis("nbar2", "initial.m2.nbar", n)}),
                       "first_peak_value");
    s["argmax_axis"] = "r_1M";
    add(s);
  }
  add(sweep_doc("fig2g", "Fig. 2(g)", fig2 + "1M, r=1, nbar2=0, first-peak LN vs nbar1 per qubit pe",
                with_dims(one_qubit("1M", 1.0, 0.0, 0.0), 1e-8),
                Json::array({axis("pe", "initial.q.pe", {0.0, 0.1, 0.2, 0.3}),
                             axis("nbar1", "initial.m1.nbar", n)}),
                "first_peak_value"));

  const std::vector<double> n3{0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0};
  const std::string fig3 = "optimal time is the first LN peak; r_b=0 is the single-qubit black curve; ";
  add(sweep_doc("fig3a", "Fig. 3(a)", fig3 + "2S, r_BS=1, nbar2=0, first-peak LN vs nbar1 per r_b",
                two_side(1.0, 1.0, 0.0, 0.0),
                Json::array({axis("r_b", "model.ratios.r_2S_b", {0.0, 0.5, 1.0}),
                             axis("nbar1", "initial.m1.nbar", n3)}),
                "first_peak_value"));
  add(sweep_doc("fig3b", "Fig. 3(b)", fig3 + "2S, r_BS=1, nbar1=0, first-peak LN vs nbar2 per r_b",
                two_side(1.0, 1.0, 0.0, 0.0),
                Json::array({axis("r_b", "model.ratios.r_2S_b", {0.0, 0.5, 1.0}),
                             axis("nbar2", "initial.m2.nbar", n3)}),
                "first_peak_value"));
  add(sweep_doc("fig3c", "Fig. 3(c)", fig3 + "2M, r_a2=1, r_b1=r_b2, nbar2=0, first-peak LN vs nbar1 per r_b",
                two_middle(1.0, 1.0, 0.0, 0.0),
                Json::array({axis("r_b", std::vector<std::string>{"model.ratios.r_2M_b1", "model.ratios.r_2M_b2"},
                                  {0.0, 0.5, 1.0}),
                             axis("nbar1", "initial.m1.nbar", n3)}),
                "first_peak_value"));

  {
    Json d = one_qubit("1S", 0.18, 2.0, 0.0);
    d["observables"] = Json::array({ln("m1", "m2"), ln("q", "m1"), ln("q", "m2")});
    add(run_doc("fig-s1-1s", "Supplement Fig. S1 (left)", "1S, r=0.18, nbar1=2, pairwise LN", d));
    d = one_qubit("1M", 1.0, 2.0, 0.0);
    d["observables"] = Json::array({ln("m1", "m2"), ln("q", "m1"), ln("q", "m2")});
    add(run_doc("fig-s1-1m", "Supplement Fig. S1 (right)", "1M, r=1, nbar1=2, pairwise LN", d));
    d = two_side(1.0, 1.0, 2.0, 0.0);
    d["observables"] = all_pairs({"m1", "m2", "qa", "qb"});
    add(run_doc("fig-s2-2s", "Supplement Fig. S2 (left)", "2S, r_BS=r_b=1, nbar1=2, pairwise LN", d));
    d = two_middle(1.0, 1.0, 2.0, 0.0);
    d["observables"] = all_pairs({"m1", "m2", "qa", "qb"});
    add(run_doc("fig-s2-2m", "Supplement Fig. S2 (right)", "2M, r_b=r_a2=1, nbar1=2, pairwise LN", d));
  }

  const std::vector<double> rates{0.0, 0.01, 0.05, 0.1};
  const std::string s3 = "Supplement Fig. S3";
  add(dissipation("fig-s3a", s3 + "(a)", "1S, r=0.18, nbar1=1, qubit dephasing sqrt(rate) sigma_z", 1.0,
                  {"qubit_dephasing"}, rates));
  add(dissipation("fig-s3b", s3 + "(b)", "1S, r=0.18, nbar1=2, qubit dephasing sqrt(rate) sigma_z", 2.0,
                  {"qubit_dephasing"}, rates));
  add(dissipation("fig-s3c", s3 + "(c)", "1S, r=0.18, nbar1=2, qubit relaxation", 2.0,
                  {"qubit_relaxation"}, rates));
  add(dissipation("fig-s3d", s3 + "(d)", "1S, r=0.18, nbar1=2, qubit dephasing and relaxation", 2.0,
                  {"qubit_dephasing", "qubit_relaxation"}, rates));
  add(dissipation("fig-s3e", s3 + "(e)", "1S, r=0.18, nbar1=2, damping of both modes at equal rates", 2.0,
                  {"mode_damping"}, rates));
  add(dissipation("fig-s3f", s3 + "(f)", "1S, r=0.18, nbar1=2, all channels at equal rates", 2.0,
                  {"qubit_dephasing", "qubit_relaxation", "mode_damping"}, rates));
  add(thermal_environment("fig-s4a", "1S, r=0.18, nbar1=1, qubit dephasing and relaxation at rate 0.05 vs n_th",
                          {"qubit_dephasing", "qubit_relaxation"}));
  add(thermal_environment("fig-s4b", "1S, r=0.18, nbar1=1, all channels at rate 0.05 vs n_th",
                          {"qubit_dephasing", "qubit_relaxation", "mode_damping"}));

  add(resource("coherent-1s", "Supplement, coherent-state comparison (top)",
               "1S, r=0.18, oscillator 1 coherent with |alpha|^2 = mean, first-peak LN", "1S", 0.18, "coherent"));
  add(resource("coherent-1m", "Supplement, coherent-state comparison (bottom)",
               "1M, r=1, oscillator 1 coherent with |alpha|^2 = mean, first-peak LN", "1M", 1.0, "coherent"));
  add(resource("prcs-1s", "Supplement, phase-randomised coherent states (top)",
               "1S, r=0.18, oscillator 1 phase randomised with mean occupation, first-peak LN", "1S", 0.18, "prcs"));
  add(resource("prcs-1m", "Supplement, phase-randomised coherent states (bottom)",
               "1M, r=1, oscillator 1 phase randomised with mean occupation, first-peak LN", "1M", 1.0, "prcs"));

  const double k2 = 1.0 / std::numbers::sqrt2;
  {
    Json s = sweep_doc("s6-threequbit", "Supplement Fig. S5(a)",
                       "3-qubit chain q1-q2-q3, k2/k1=1/sqrt(2), thermal q1, max LN between q2 and q3",
                       three_qubit(k2, 0.5),
                       Json::array({axis("pe", "initial.q1.pe", {0.5, 0.63})}), "max_value");
    s["refine"] = "golden";
    add(s);
  }
  {
    Json d = one_qubit("1S", 0.0, 5.0, 0.0);
    d["grid"] = grid(1000.0, 20001);
    d["observables"] = Json::array({single("excited_population", "q")});
    Json s = sweep_doc("fig-s5b-inversion", "Supplement Fig. S5(b)",
                       "ground qubit JC-coupled to a thermal oscillator (nbar=5), running max of pe",
                       d, Json::array({axis("nbar1", "initial.m1.nbar", {5.0})}), "max_value");
    s["refine"] = "golden";
    add(s);
  }
  {
    Json d = three_qubit(k2, 0.5);
    d["observables"] = Json::array({single("ground_fidelity", "q1"), ln("q2", "q3")});
    add(run_doc("fig-s6a", "Supplement Fig. S6(a)", "3-qubit chain, pe=0.5, ground fidelity of q1 and LN", d));
    d["initial"]["q1"] = qubit(0.63);
    add(run_doc("fig-s6b", "Supplement Fig. S6(b)", "3-qubit chain, pe=0.63, ground fidelity of q1 and LN", d));
    d = one_qubit("1S", 0.18, 5.0, 0.0);
    d["observables"] = Json::array({single("ground_fidelity", "q"), ln("m1", "m2")});
    add(run_doc("fig-s6c", "Supplement Fig. S6(c)", "1S, r=0.18, nbar1=5, ground fidelity and LN", d));
    d = one_qubit("1M", 1.0, 5.0, 0.0);
    d["observables"] = Json::array({single("ground_fidelity", "q"), ln("m1", "m2")});
    add(run_doc("fig-s6d", "Supplement Fig. S6(d)", "1M, r=1, nbar1=5, ground fidelity and LN", d));
  }
  {
    Json d = three_qubit(1.0, 0.5);
    d["observables"] = Json::array({pair_measure("concurrence", "q2", "q3"), ln("q2", "q3")});
    add(run_doc("fig-s7a", "Supplement Fig. S7 (left)",
                "3-qubit chain, k2/k1=1, pe=0.5, concurrence and LN between q2 and q3", d));
    d = three_qubit(0.0, 0.5);
    d["observables"] = Json::array({pair_measure("concurrence", "q1", "q2"), ln("q1", "q2")});
    add(run_doc("fig-s7-reference", "Supplement Fig. S7 (dashed)",
                "two-qubit exchange, q1 maximally thermal, q2 ground", d));
  }
  {
    Json d = one_qubit("1S", 1.0, 0.0, 0.0);
    d["dims"] = {{"epsilon", 1e-6}};
    add(sweep_doc("fig-s8-dims", "Supplement Fig. S8",
                  "1S, r=1, pe=nbar2=0, truncation dimension vs nbar1 per tail threshold", d,
                  Json::array({axis("epsilon", "dims.epsilon", {1e-4, 1e-6, 1e-8, 1e-10}),
                               axis("nbar1", "initial.m1.nbar", n)}),
                  "dimension"));
  }
  {
    Json d = one_qubit("1S", 0.18, 3.0, 0.0);
    d["observables"] = Json::array({ln("m1", "m2"), single("entanglement_potential", "m1")});
    add(sweep_doc("fig-s9", "Supplement Fig. S9",
                  "1S, nbar1=3, nbar2=0; r=0 gives EP of the JC-driven mode, r=0.18 gives LN", d,
                  Json::array({axis("r_1S", "model.ratios.r_1S", {0.0, 0.18})}), "full_series"));
  }
  {
    Json d = one_qubit("1S", 0.32, 2.0, 0.08);
    d["model"] = {{"kind", "1S"},
                  {"ratios", Json::object()},
                  {"physical",
                   {{"mass_amu", 40.0},
                    {"charge_e", 1.0},
                    {"omega_x", 2.0 * std::numbers::pi * 2.9e6},
                    {"omega_z", 2.0 * std::numbers::pi * 150e3},
                    {"rabi_frequency", 2.0 * std::numbers::pi * 101e3},
                    {"lamb_dicke", 0.06}}}};
    add(run_doc("hopping-experiment", "Experimental feasibility",
                "40Ca+ pair; trap parameters give r_1S close to 0.32; cooled mode at nbar=0.08", d));
  }
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  std::string names;
  for (const auto& p : presets()) names += (names.empty() ? "" : ", ") + p.name;
  throw UnknownPreset("unknown preset '" + name + "'; available: " + names);
}

}  // namespace thermoent

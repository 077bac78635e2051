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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "thermoent/errors.hpp"
#include "thermoent/experiments.hpp"

using namespace thermoent;

namespace {

struct Common {
  std::string out;
  std::string format = "csv";
  int jobs = 0;
  std::optional<double> epsilon;
  std::optional<long long> seed;
  bool plot = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "output path (default stdout)");
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", c.jobs, "sweep workers, 0 = all cores")->check(CLI::NonNegativeNumber);
  cmd->add_option("--epsilon", c.epsilon, "tail tolerance for automatic dimensions");
  cmd->add_option("--seed", c.seed, "reserved; the pipeline is deterministic");
  cmd->add_flag("--plot", c.plot, "also write a gnuplot script next to a CSV output");
}

void emit(const Table& table, const Common& c) {
  const OutputFormat format = parse_output_format(c.format);
  if (c.out.empty()) {
    write_table(table, std::cout, format);
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw ConfigError("cannot write '" + c.out + "'");
  write_table(table, file, format);
  if (c.plot && format == OutputFormat::csv) {
    std::ofstream gp(c.out + ".gp", std::ios::binary);
    gp << gnuplot_script(table, c.out);
  }
}

Table execute(const Json& doc, const Common& c) {
  if (is_sweep_document(doc)) {
    SweepOptions opts;
    opts.jobs = c.jobs;
    opts.epsilon = c.epsilon;
    return sweep(parse_sweep(doc), opts);
  }
  RunOptions opts;
  opts.epsilon = c.epsilon;
  return run(parse_experiment(doc), opts);
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      dims.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--dims expects a comma-separated list of integers, got '" + text + "'");
    }
  }
  return dims;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermally induced entanglement simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Common common;
  std::string path;
  std::string name;
  std::string dims_text;
  std::string column;
  bool emit_config = false;

  auto* run_cmd = app.add_subcommand("run", "run a single experiment config");
  run_cmd->add_option("config", path, "experiment JSON")->required();
  add_common(run_cmd, common);

  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep config");
  sweep_cmd->add_option("config", path, "sweep JSON")->required();
  add_common(sweep_cmd, common);

  auto* preset_cmd = app.add_subcommand("preset", "run or print a named figure preset");
  preset_cmd->add_option("name", name, "preset name")->required();
  preset_cmd->add_flag("--emit-config", emit_config, "print the preset document instead of running it");
  add_common(preset_cmd, common);

  auto* converge_cmd = app.add_subcommand("converge", "truncation convergence study");
  converge_cmd->add_option("config", path, "experiment JSON")->required();
  converge_cmd->add_option("--dims", dims_text, "increasing mode dimensions, e.g. 10,15,20")->required();
  converge_cmd->add_option("--column", column, "observable to compare");
  add_common(converge_cmd, common);

  auto* list_cmd = app.add_subcommand("list-presets", "list preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& p : presets()) std::cout << p.name << "\t" << p.figure << "\t" << p.description << "\n";
      return 0;
    }
    if (run_cmd->parsed()) {
      const Json doc = load_json_file(path);
      if (is_sweep_document(doc)) throw ConfigError("'" + path + "' is a sweep; use the sweep subcommand");
      emit(execute(doc, common), common);
    } else if (sweep_cmd->parsed()) {
      const Json doc = load_json_file(path);
      if (!is_sweep_document(doc)) throw ConfigError("'" + path + "' has no axes; use the run subcommand");
      emit(execute(doc, common), common);
    } else if (preset_cmd->parsed()) {
      const Preset& p = preset(name);
      if (emit_config) {
        const std::string text = p.document.dump(2) + "\n";
        if (common.out.empty()) {
          std::cout << text;
        } else {
          std::ofstream(common.out, std::ios::binary) << text;
        }
      } else {
        emit(execute(p.document, common), common);
      }
    } else if (converge_cmd->parsed()) {
      ExperimentConfig config = parse_experiment(load_json_file(path));
      if (common.epsilon) config.dims.epsilon = *common.epsilon;
      std::optional<std::string> col;
      if (!column.empty()) col = column;
      emit(convergence_study(config, parse_dims(dims_text), col), common);
    }
  } catch (const UnknownPreset& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

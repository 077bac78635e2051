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
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "thermoent/errors.hpp"
#include "thermoent/experiments.hpp"

namespace thermoent {

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] == name) return k;
  }
  throw InvalidArgument("table has no column '" + name + "'");
}

std::vector<double> Table::numeric(const std::string& name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const double* v = std::get_if<double>(&row[c]);
    out.push_back(v ? *v : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ConfigError("unknown output format '" + std::string(text) + "'");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  out << "# " << table.metadata.dump() << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << csv_field(table.columns[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (const double* v = std::get_if<double>(&row[c])) {
        out << format_number(*v);
      } else {
        out << csv_field(std::get<std::string>(row[c]));
      }
    }
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  Json doc;
  doc["metadata"] = table.metadata;
  Json columns = Json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    Json values = Json::array();
    for (const auto& row : table.rows) {
      if (const double* v = std::get_if<double>(&row[c])) {
        if (std::isfinite(*v)) {
          values.push_back(*v);
        } else {
          values.push_back(nullptr);
        }
      } else {
        values.push_back(std::get<std::string>(row[c]));
      }
    }
    columns[table.columns[c]] = std::move(values);
  }
  doc["columns"] = std::move(columns);
  out << doc.dump(1) << '\n';
}

void write_table(const Table& table, std::ostream& out, OutputFormat format) {
  if (format == OutputFormat::csv) {
    write_csv(table, out);
  } else {
    write_json(table, out);
  }
}

std::string gnuplot_script(const Table& table, const std::string& csv_path) {
  std::ostringstream s;
  s << "set datafile separator ','\n";
  s << "set datafile commentschars '#'\n";
  s << "set key autotitle columnhead\n";
  if (!table.columns.empty()) s << "set xlabel '" << table.columns.front() << "'\n";
  s << "plot";
  bool first = true;
  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    if (table.columns[c] == "error") continue;
    s << (first ? " " : ", \\\n     ") << "'" << csv_path << "' using 1:" << (c + 1)
      << " with lines";
    first = false;
  }
  s << '\n';
  return s.str();
}

}  // namespace thermoent

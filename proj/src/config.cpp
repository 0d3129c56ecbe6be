// Copyright 2026 The Highlights Authors.
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

#include "highlights/config.hpp"

#include <fstream>
#include <sstream>

#include "highlights/error.hpp"
#include "json.hpp"

namespace hl {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& message) { throw Error(Errc::BadConfig, message); }

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(where + ": missing key '" + key + "'");
  return *it;
}

template <typename T>
T get(const json& value, const std::string& where) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    bad(where + ": wrong value type");
  }
}

template <typename T>
void read_optional(const json& obj, const char* key, T& out, const std::string& where) {
  if (auto it = obj.find(key); it != obj.end()) out = get<T>(*it, where + "." + key);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::optional<ColumnRole> parse_role(std::string_view name) {
  if (name == "measure") return ColumnRole::Measure;
  if (name == "dimension") return ColumnRole::Dimension;
  if (name == "datetime") return ColumnRole::DateTime;
  if (name == "descriptor") return ColumnRole::Descriptor;
  if (name == "identifier") return ColumnRole::Identifier;
  if (name == "ignore") return ColumnRole::Ignore;
  return std::nullopt;
}

ColumnSpec column_from_json(const json& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return parse_column_spec(value.get<std::string>());
    } catch (const Error& e) {
      bad(where + ": " + e.what());
    }
  }
  if (!value.is_object()) bad(where + ": expected a string or an object");
  const auto role_name = get<std::string>(require(value, "role", where), where + ".role");
  auto role = parse_role(role_name);
  if (!role) bad(where + ": unknown role '" + role_name + "'");
  ColumnSpec spec;
  spec.role = *role;
  read_optional(value, "unit", spec.unit, where);
  read_optional(value, "characterType", spec.character_type, where);
  return spec;
}

DetectorConfig detectors_from_json(const json& obj) {
  const std::string where = "detectors";
  if (!obj.is_object()) bad(where + ": expected an object");
  DetectorConfig cfg;
  if (auto it = obj.find("enabled"); it != obj.end()) {
    auto names = get<std::vector<std::string>>(*it, where + ".enabled");
    cfg.enabled = {names.begin(), names.end()};
  }
  if (auto it = obj.find("k"); it != obj.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 1) bad(where + ".k: must be an integer >= 1");
    cfg.k = it->get<std::size_t>();
  }
  read_optional(obj, "megaContributorThreshold", cfg.mega_contributor_threshold, where);
  read_optional(obj, "alpha", cfg.alpha, where);
  if (auto it = obj.find("correlationBins"); it != obj.end()) {
    read_optional(*it, "significant", cfg.correlation_bins.significant, where + ".correlationBins");
    read_optional(*it, "moderate", cfg.correlation_bins.moderate, where + ".correlationBins");
  }
  read_optional(obj, "dominanceMode", cfg.dominance_mode, where);
  read_optional(obj, "partialDominanceFloor", cfg.partial_dominance_floor, where);
  read_optional(obj, "seasonalityThreshold", cfg.seasonality_threshold, where);
  read_optional(obj, "emitNegative", cfg.emit_negative, where);
  if (auto it = obj.find("correlationAlgorithm"); it != obj.end()) {
    auto name = get<std::string>(*it, where + ".correlationAlgorithm");
    auto algorithm = parse_correlation_algorithm(name);
    if (!algorithm) bad(where + ".correlationAlgorithm: unknown algorithm '" + name + "'");
    cfg.correlation_algorithm = *algorithm;
  }
  cfg.validate();
  return cfg;
}

SummaryOptions templates_from_json(const json& obj) {
  const std::string where = "templates";
  if (!obj.is_object()) bad(where + ": expected an object");
  SummaryOptions options;
  read_optional(obj, "holistic", options.templates.holistic, where);
  read_optional(obj, "elementary", options.templates.elementary, where);
  read_optional(obj, "typeOrder", options.type_order, where);
  try {
    options.templates.validate();
  } catch (const Error& e) {
    bad(where + ": " + e.what());
  }
  return options;
}

std::string read_file(const std::filesystem::path& path, Errc code, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(code, std::string("cannot read ") + what + " '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ColumnSpec parse_column_spec(std::string_view text) {
  std::string_view name = text;
  std::string_view argument;
  if (auto open = text.find('('); open != std::string_view::npos) {
    if (text.back() != ')') throw Error(Errc::BadConfig, "malformed column spec '" + std::string(text) + "'");
    name = text.substr(0, open);
    argument = text.substr(open + 1, text.size() - open - 2);
  }
  auto role = parse_role(name);
  if (!role) throw Error(Errc::BadConfig, "unknown column role '" + std::string(name) + "'");
  ColumnSpec spec;
  spec.role = *role;
  if (!argument.empty()) {
    if (*role == ColumnRole::Measure) {
      spec.unit = argument;
    } else if (*role == ColumnRole::Dimension || *role == ColumnRole::DateTime) {
      spec.character_type = argument;
    } else {
      throw Error(Errc::BadConfig, "role '" + std::string(name) + "' takes no argument");
    }
  }
  return spec;
}

AppConfig parse_app_config(std::string_view text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("config: expected a JSON object");

  AppConfig cfg;
  auto& ds = cfg.dataset;
  ds.fact_table = resolve(base_dir, get<std::string>(require(doc, "factTable", "config"), "factTable"));

  const auto& columns = require(doc, "columns", "config");
  if (!columns.is_object()) bad("columns: expected an object");
  for (const auto& [name, value] : columns.items()) {
    ds.columns.emplace_back(name, column_from_json(value, "columns." + name));
  }

  if (auto it = doc.find("dimensionTables"); it != doc.end()) {
    if (!it->is_array()) bad("dimensionTables: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& t = (*it)[i];
      const auto where = "dimensionTables[" + std::to_string(i) + "]";
      if (!t.is_object()) bad(where + ": expected an object");
      DimensionTableSpec spec;
      spec.path = resolve(base_dir, get<std::string>(require(t, "path", where), where + ".path"));
      spec.character_type = get<std::string>(require(t, "characterType", where), where + ".characterType");
      spec.join_key = get<std::string>(require(t, "joinKey", where), where + ".joinKey");
      read_optional(t, "descriptionColumn", spec.description_column, where);
      read_optional(t, "propertyColumns", spec.property_columns, where);
      ds.dimension_tables.push_back(std::move(spec));
    }
  }

  if (auto it = doc.find("derivedMeasures"); it != doc.end()) {
    if (!it->is_array()) bad("derivedMeasures: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& d = (*it)[i];
      const auto where = "derivedMeasures[" + std::to_string(i) + "]";
      if (!d.is_object()) bad(where + ": expected an object");
      DerivedMeasureSpec spec;
      spec.name = get<std::string>(require(d, "name", where), where + ".name");
      spec.expression = get<std::string>(require(d, "expression", where), where + ".expression");
      read_optional(d, "unit", spec.unit, where);
      ds.derived_measures.push_back(std::move(spec));
    }
  }

  read_optional(doc, "allowDanglingKeys", ds.allow_dangling_keys, "config");
  read_optional(doc, "lenient", ds.lenient, "config");
  if (auto it = doc.find("detectors"); it != doc.end()) cfg.detectors = detectors_from_json(*it);
  if (auto it = doc.find("templates"); it != doc.end()) cfg.summary = templates_from_json(*it);
  return cfg;
}

AppConfig load_app_config(const std::filesystem::path& path) {
  const auto text = read_file(path, Errc::BadConfig, "config file");
  return parse_app_config(text, path.parent_path());
}

GroupBySpec parse_query(std::string_view text) {
  auto invalid = [](const std::string& message) -> Error { return Error(Errc::InvalidQuery, message); };
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw invalid(std::string("query is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw invalid("query: expected a JSON object");
  GroupBySpec spec;
  try {
    if (!doc.contains("groupBy")) throw invalid("query: missing key 'groupBy'");
    if (!doc.contains("measure")) throw invalid("query: missing key 'measure'");
    const auto& group_by = doc.at("groupBy");
    if (group_by.is_string()) {
      spec.groupers.push_back(group_by.get<std::string>());
    } else {
      spec.groupers = group_by.get<std::vector<std::string>>();
    }
    spec.measure = doc.at("measure").get<std::string>();
    if (auto it = doc.find("agg"); it != doc.end()) {
      const auto name = it->get<std::string>();
      auto fn = parse_aggregate(name);
      if (!fn) throw invalid("query: unknown aggregate '" + name + "'");
      spec.aggregate = *fn;
    }
    if (auto it = doc.find("filters"); it != doc.end()) {
      for (const auto& f : *it) {
        Filter filter;
        filter.feature = f.at("feature").get<std::string>();
        const auto op_name = f.value("op", std::string("="));
        auto op = parse_filter_op(op_name);
        if (!op) throw invalid("query: unknown filter operator '" + op_name + "'");
        filter.op = *op;
        const auto& value = f.at("value");
        auto as_text = [](const json& v) {
          return v.is_string() ? v.get<std::string>() : v.dump();
        };
        if (value.is_array()) {
          for (const auto& v : value) filter.constants.push_back(as_text(v));
        } else {
          filter.constants.push_back(as_text(value));
        }
        spec.filters.push_back(std::move(filter));
      }
    }
  } catch (const json::exception& e) {
    throw invalid(std::string("query: ") + e.what());
  }
  return spec;
}

GroupBySpec load_query(const std::filesystem::path& path) {
  return parse_query(read_file(path, Errc::InvalidQuery, "query file"));
}

}  // namespace hl

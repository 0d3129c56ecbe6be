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

#include "highlights/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <unordered_map>

#include "highlights/error.hpp"
#include "highlights/expression.hpp"

namespace hl {

const ColumnSpec* DatasetConfig::find_column(std::string_view name) const {
  for (const auto& [col, spec] : columns) {
    if (col == name) return &spec;
  }
  return nullptr;
}

std::optional<double> parse_number(std::string_view text) {
  auto is_blank = [](char c) { return c == ' ' || c == '\t'; };
  while (!text.empty() && is_blank(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_blank(text.back())) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

namespace {

bool is_dimension(ColumnRole role) {
  return role == ColumnRole::Dimension || role == ColumnRole::DateTime;
}

FeatureKind kind_for(ColumnRole role) {
  switch (role) {
    case ColumnRole::Measure: return FeatureKind::Numeric;
    case ColumnRole::DateTime: return FeatureKind::DateTime;
    case ColumnRole::Descriptor: return FeatureKind::Descriptor;
    case ColumnRole::Dimension:
    case ColumnRole::Identifier:
    case ColumnRole::Ignore: break;
  }
  return FeatureKind::Identifier;
}

struct Column {
  std::size_t csv_index;
  std::string name;
  ColumnSpec spec;
};

std::string character_type_name(const Column& c) {
  return c.spec.character_type.empty() ? c.name : c.spec.character_type;
}

std::size_t require_column(const CsvTable& table, const std::string& name,
                           const std::filesystem::path& path) {
  auto idx = table.column(name);
  if (!idx) {
    throw Error(Errc::BadConfig, "column '" + name + "' not found in '" + path.string() + "'");
  }
  return *idx;
}

void load_dimension_table(const DimensionTableSpec& spec, bool temporal,
                          CharacterRegistry& registry) {
  auto table = read_csv(spec.path);
  auto key = require_column(table, spec.join_key, spec.path);
  std::optional<std::size_t> desc;
  if (!spec.description_column.empty()) desc = require_column(table, spec.description_column, spec.path);

  CharacterType type{spec.character_type, {}, temporal};
  std::vector<std::size_t> prop_idx;
  for (const auto& p : spec.property_columns) {
    auto idx = require_column(table, p, spec.path);
    bool numeric = true;
    for (const auto& row : table.rows) {
      if (!row[idx].empty() && !parse_number(row[idx])) {
        numeric = false;
        break;
      }
    }
    type.properties.push_back({p, numeric ? FeatureKind::Numeric : FeatureKind::Descriptor, {}});
    prop_idx.push_back(idx);
  }
  registry.add_type(type);

  for (const auto& row : table.rows) {
    Character c;
    c.type = spec.character_type;
    c.id = row[key];
    c.description = desc && !row[*desc].empty() ? row[*desc] : c.id;
    for (std::size_t p = 0; p < prop_idx.size(); ++p) {
      const auto& raw = row[prop_idx[p]];
      Value v;
      if (!raw.empty()) {
        if (type.properties[p].kind == FeatureKind::Numeric) {
          v = *parse_number(raw);
        } else {
          v = raw;
        }
      }
      c.properties.emplace(spec.property_columns[p], std::move(v));
    }
    if (temporal) {
      if (auto t = parse_iso8601(c.id)) c.epoch_seconds = t->epoch_seconds;
    }
    registry.add(std::move(c));
  }
}

}  // namespace

LoadedDataset load_dataset(const DatasetConfig& config) {
  auto table = read_csv(config.fact_table, CsvOptions{config.lenient});
  return load_dataset(config, table);
}

LoadedDataset load_dataset(const DatasetConfig& config, const CsvTable& table) {
  LoadedDataset out;
  for (const auto& msg : table.skipped) out.warnings.push_back("skipped malformed row: " + msg);

  bool has_measure = false, has_dimension = false;
  for (const auto& [name, spec] : config.columns) {
    has_measure |= spec.role == ColumnRole::Measure;
    has_dimension |= is_dimension(spec.role);
    if (spec.role != ColumnRole::Ignore && !table.column(name)) {
      throw Error(Errc::BadConfig, "configured column '" + name + "' not found in '" +
                                       config.fact_table.string() + "'");
    }
  }
  if (!has_measure || !has_dimension) {
    throw Error(Errc::BadConfig, "configuration needs at least one measure and one dimension column");
  }

  std::vector<Column> columns;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    const auto* spec = config.find_column(table.header[i]);
    if (!spec) {
      out.warnings.push_back("column '" + table.header[i] + "' not configured; ignored");
      continue;
    }
    if (spec->role == ColumnRole::Ignore) continue;
    columns.push_back({i, table.header[i], *spec});
  }

  std::map<std::string, const DimensionTableSpec*> lookup_tables;
  for (const auto& dim : config.dimension_tables) lookup_tables[dim.character_type] = &dim;

  // Register character types; joined ones are populated from their tables.
  auto& registry = out.characters;
  std::set<std::string> loaded;
  for (const auto& col : columns) {
    if (!is_dimension(col.spec.role)) continue;
    auto type = character_type_name(col);
    bool temporal = col.spec.role == ColumnRole::DateTime;
    out.dataset.dimensions[col.name] = type;
    auto it = lookup_tables.find(type);
    if (it == lookup_tables.end()) {
      registry.add_type(CharacterType{type, {}, temporal});
    } else if (loaded.insert(type).second) {
      load_dimension_table(*it->second, temporal, registry);
    }
  }
  for (const auto& [type, spec] : lookup_tables) {
    if (!loaded.count(type)) {
      out.warnings.push_back("dimension table for '" + type + "' is not referenced by any column");
    }
  }

  std::vector<Feature> features;
  for (const auto& col : columns) {
    features.push_back({col.name, kind_for(col.spec.role), std::nullopt});
    if (col.spec.role == ColumnRole::Measure) {
      out.dataset.measures.push_back({col.name, col.spec.unit, MeasureKind::Base, {}, {}});
    }
  }

  // Derived measures are appended after the stored columns, in config order.
  std::vector<Expression> derivations;
  for (const auto& d : config.derived_measures) {
    auto expr = Expression::parse(d.expression);
    for (const auto& ref : expr.references()) {
      if (!out.dataset.find_measure(ref)) {
        throw Error(Errc::BadDerivation, "derived measure '" + d.name +
                                             "' references unknown measure '" + ref + "'");
      }
    }
    features.push_back({d.name, FeatureKind::Numeric, std::nullopt});
    out.dataset.measures.push_back({d.name, d.unit, MeasureKind::Derived, {}, d.expression});
    derivations.push_back(std::move(expr));
  }
  out.dataset.schema = Schema(config.fact_table.stem().string(), std::move(features));

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    Fact fact;
    fact.values.reserve(out.dataset.schema.size());
    std::string defect;
    for (const auto& col : columns) {
      const auto& raw = row[col.csv_index];
      if (raw.empty()) {
        fact.values.emplace_back();
        continue;
      }
      switch (col.spec.role) {
        case ColumnRole::Measure:
          if (auto v = parse_number(raw)) {
            fact.values.emplace_back(*v);
          } else {
            defect = "non-numeric value '" + raw + "'";
          }
          break;
        case ColumnRole::DateTime:
          if (auto t = parse_iso8601(raw)) {
            fact.values.emplace_back(std::move(*t));
          } else {
            defect = "unparsable timestamp '" + raw + "'";
          }
          break;
        default:
          fact.values.emplace_back(raw);
      }
      if (!defect.empty()) {
        std::string msg = config.fact_table.string() + ": line " + std::to_string(table.lines[r]) +
                          ", column " + std::to_string(col.csv_index + 1) + " ('" + col.name +
                          "'): " + defect;
        if (!config.lenient) throw Error(Errc::MalformedCsv, msg);
        out.warnings.push_back("skipped malformed row: " + msg);
        break;
      }
    }
    if (!defect.empty()) continue;

    // Resolve every dimension value to a character.
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto& col = columns[c];
      if (!is_dimension(col.spec.role) || is_null(fact.values[c])) continue;
      auto type = character_type_name(col);
      auto id = value_to_string(fact.values[c]);
      if (registry.contains(type, id)) continue;
      if (loaded.count(type)) {
        std::string msg = config.fact_table.string() + ": line " + std::to_string(table.lines[r]) +
                          ": id '" + id + "' not found in dimension table for '" + type + "'";
        if (!config.allow_dangling_keys) throw Error(Errc::JoinMiss, msg);
        out.warnings.push_back(msg + "; using a flat character");
      }
      Character ch{type, id, id, {}, std::nullopt};
      if (const auto* t = std::get_if<DateTime>(&fact.values[c])) ch.epoch_seconds = t->epoch_seconds;
      registry.add(std::move(ch));
    }

    for (const auto& expr : derivations) {
      auto lookup = [&](std::string_view name) -> std::optional<double> {
        auto idx = out.dataset.schema.index_of(name);
        if (!idx || *idx >= fact.values.size()) return std::nullopt;
        const auto* d = std::get_if<double>(&fact.values[*idx]);
        return d ? std::optional<double>(*d) : std::nullopt;
      };
      auto v = expr.evaluate(lookup);
      if (v) {
        fact.values.emplace_back(*v);
      } else {
        fact.values.emplace_back();
      }
    }
    out.dataset.facts.push_back(std::move(fact));
  }
  return out;
}

std::string_view to_string(SuggestedRole role) noexcept {
  switch (role) {
    case SuggestedRole::Measure: return "measure";
    case SuggestedRole::DateTime: return "datetime";
    case SuggestedRole::Dimension: return "dimension";
    case SuggestedRole::Descriptor: return "descriptor";
  }
  return "descriptor";
}

ColumnSuggestion suggest_column(std::string name, std::span<const std::string> values,
                                InferenceOptions options) {
  ColumnSuggestion out{std::move(name), FeatureKind::Descriptor, SuggestedRole::Descriptor};
  std::size_t present = 0;
  bool numeric = true, datetime = true;
  std::unordered_map<std::string_view, std::size_t> counts;
  for (const auto& v : values) {
    if (v.empty()) continue;
    ++present;
    numeric = numeric && parse_number(v).has_value();
    datetime = datetime && parse_iso8601(v).has_value();
    ++counts[v];
  }
  if (present == 0) return out;
  if (numeric) {
    out.kind = FeatureKind::Numeric;
    out.role = SuggestedRole::Measure;
    return out;
  }
  if (datetime) {
    out.kind = FeatureKind::DateTime;
    out.role = SuggestedRole::DateTime;
    return out;
  }
  std::size_t singletons = 0;
  for (const auto& [value, count] : counts) singletons += count == 1;
  double ratio = static_cast<double>(singletons) / static_cast<double>(present);
  if (ratio <= options.singleton_ratio && counts.size() <= options.max_distinct) {
    out.kind = FeatureKind::Identifier;
    out.role = SuggestedRole::Dimension;
  }
  return out;
}

std::vector<ColumnSuggestion> infer_feature_kinds(const CsvTable& sample, InferenceOptions options) {
  std::vector<ColumnSuggestion> out;
  std::vector<std::string> column;
  for (std::size_t c = 0; c < sample.header.size(); ++c) {
    column.clear();
    for (const auto& row : sample.rows) column.push_back(row[c]);
    out.push_back(suggest_column(sample.header[c], column, options));
  }
  return out;
}

std::vector<ColumnProfile> profile_table(const CsvTable& table, InferenceOptions options) {
  std::vector<ColumnProfile> out;
  const auto suggestions = infer_feature_kinds(table, options);
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    ColumnProfile p;
    p.column = table.header[c];
    p.suggestion = suggestions[c];
    std::set<std::string_view> seen;
    double sum = 0.0;
    for (const auto& row : table.rows) {
      const auto& cell = row[c];
      if (cell.find_first_not_of(" \t") == std::string::npos) continue;
      ++p.count;
      seen.insert(cell);
      if (p.suggestion.kind != FeatureKind::Numeric) continue;
      if (auto v = parse_number(cell)) {
        p.min = p.min ? std::min(*p.min, *v) : *v;
        p.max = p.max ? std::max(*p.max, *v) : *v;
        sum += *v;
      }
    }
    p.distinct = seen.size();
    if (p.min) p.mean = sum / static_cast<double>(p.count);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace hl

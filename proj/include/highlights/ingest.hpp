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

#pragma once

// Loads a fact table and its dimension lookup tables from CSV files and
// builds the character registry.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "highlights/core_model.hpp"
#include "highlights/csv.hpp"

namespace hl {

enum class ColumnRole { Measure, Dimension, DateTime, Descriptor, Identifier, Ignore };

struct ColumnSpec {
  ColumnRole role = ColumnRole::Ignore;
  std::string unit;            // Measure
  std::string character_type;  // Dimension / DateTime; defaults to the column name
};

struct DimensionTableSpec {
  std::filesystem::path path;
  std::string character_type;
  std::string join_key;
  std::string description_column;
  std::vector<std::string> property_columns;
};

struct DerivedMeasureSpec {
  std::string name;
  std::string expression;
  std::string unit;
};

struct DatasetConfig {
  std::filesystem::path fact_table;
  std::vector<std::pair<std::string, ColumnSpec>> columns;
  std::vector<DimensionTableSpec> dimension_tables;
  std::vector<DerivedMeasureSpec> derived_measures;
  // Unknown dimension ids become flat characters (with a warning) instead of
  // failing the load.
  bool allow_dangling_keys = false;
  // Malformed fact rows are skipped with a warning instead of failing.
  bool lenient = false;

  const ColumnSpec* find_column(std::string_view name) const;
};

struct LoadedDataset {
  Dataset dataset;
  CharacterRegistry characters;
  std::vector<std::string> warnings;
};

LoadedDataset load_dataset(const DatasetConfig& config);
// Same as load_dataset but over an already parsed fact table; dimension
// tables are still read from disk.
LoadedDataset load_dataset(const DatasetConfig& config, const CsvTable& facts);

enum class SuggestedRole { Measure, DateTime, Dimension, Descriptor };

std::string_view to_string(SuggestedRole role) noexcept;

struct ColumnSuggestion {
  std::string column;
  FeatureKind kind = FeatureKind::Descriptor;
  SuggestedRole role = SuggestedRole::Descriptor;
};

struct InferenceOptions {
  // Share of non-empty values occurring exactly once; text columns at or
  // below this ratio are suggested as dimensions.
  double singleton_ratio = 0.5;
  std::size_t max_distinct = 1000;
};

ColumnSuggestion suggest_column(std::string name, std::span<const std::string> values,
                                InferenceOptions options = {});
std::vector<ColumnSuggestion> infer_feature_kinds(const CsvTable& sample,
                                                  InferenceOptions options = {});

struct ColumnProfile {
  std::string column;
  std::size_t count = 0;  // non-empty values
  std::size_t distinct = 0;
  // Set for numeric columns.
  std::optional<double> min, max, mean;
  ColumnSuggestion suggestion;
};

std::vector<ColumnProfile> profile_table(const CsvTable& table, InferenceOptions options = {});

// Lenient number parsing used by ingestion: trims blanks, accepts a leading '+'.
std::optional<double> parse_number(std::string_view text);

}  // namespace hl

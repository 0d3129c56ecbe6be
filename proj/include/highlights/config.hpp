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

// JSON configuration and query documents.

#include <filesystem>
#include <string_view>

#include "highlights/detectors.hpp"
#include "highlights/ingest.hpp"
#include "highlights/narrate.hpp"
#include "highlights/query.hpp"

namespace hl {

struct AppConfig {
  DatasetConfig dataset;
  DetectorConfig detectors;
  SummaryOptions summary;
};

// Relative table paths resolve against `base_dir`. Throws Error(BadConfig).
AppConfig parse_app_config(std::string_view json, const std::filesystem::path& base_dir);
// Throws Error(BadConfig) naming the path when it cannot be read.
AppConfig load_app_config(const std::filesystem::path& path);

// Throws Error(InvalidQuery) on malformed documents.
GroupBySpec parse_query(std::string_view json);
GroupBySpec load_query(const std::filesystem::path& path);

// Parses "measure(kEUR)", "dimension(City)", "datetime" and friends.
ColumnSpec parse_column_spec(std::string_view text);

}  // namespace hl

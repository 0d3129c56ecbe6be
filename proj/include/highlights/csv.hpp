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

// Comma-separated, double-quote quoted, UTF-8, first row is the header.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hl {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based source line of each row in `rows`.
  std::vector<std::size_t> lines;
  // Rows dropped in lenient mode, one message each.
  std::vector<std::string> skipped;

  std::optional<std::size_t> column(std::string_view name) const;
};

struct CsvOptions {
  // Drop rows with the wrong field count instead of failing.
  bool lenient = false;
};

// Throws Error(MalformedCsv) naming the row and column of the defect.
CsvTable parse_csv(std::string_view text, std::string_view source, CsvOptions options = {});
// Throws Error(FileNotFound) when the file cannot be opened.
CsvTable read_csv(const std::filesystem::path& path, CsvOptions options = {});

}  // namespace hl

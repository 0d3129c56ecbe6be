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

#include "highlights/csv.hpp"

#include <fstream>
#include <sstream>

#include "highlights/error.hpp"

namespace hl {

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

namespace {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

// Splits the text into records, honouring quoted fields that span lines.
std::vector<Record> tokenize(std::string_view text, std::string_view source) {
  std::vector<Record> records;
  Record current;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  std::size_t line = 1;
  current.line = line;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    bool blank = current.fields.size() == 1 && current.fields[0].empty();
    if (!blank) records.push_back(std::move(current));
    current = Record{};
    current.line = line;
  };

  std::size_t i = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          throw Error(Errc::MalformedCsv,
                      std::string(source) + ": stray quote at line " + std::to_string(line) +
                          ", column " + std::to_string(current.fields.size() + 1));
        }
        in_quotes = true;
        field_was_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        if (field_was_quoted) {
          throw Error(Errc::MalformedCsv,
                      std::string(source) + ": text after closing quote at line " +
                          std::to_string(line) + ", column " +
                          std::to_string(current.fields.size() + 1));
        }
        field.push_back(c);
    }
  }
  if (in_quotes) {
    throw Error(Errc::MalformedCsv, std::string(source) + ": unterminated quote starting on line " +
                                        std::to_string(current.line));
  }
  if (!field.empty() || field_was_quoted || !current.fields.empty()) end_record();
  return records;
}

}  // namespace

CsvTable parse_csv(std::string_view text, std::string_view source, CsvOptions options) {
  auto records = tokenize(text, source);
  CsvTable table;
  if (records.empty()) {
    throw Error(Errc::MalformedCsv, std::string(source) + ": missing header row");
  }
  table.header = std::move(records.front().fields);
  for (std::size_t r = 1; r < records.size(); ++r) {
    auto& rec = records[r];
    if (rec.fields.size() != table.header.size()) {
      std::string msg = std::string(source) + ": row at line " + std::to_string(rec.line) +
                        " has " + std::to_string(rec.fields.size()) + " fields, expected " +
                        std::to_string(table.header.size());
      if (!options.lenient) throw Error(Errc::MalformedCsv, msg);
      table.skipped.push_back(std::move(msg));
      continue;
    }
    table.rows.push_back(std::move(rec.fields));
    table.lines.push_back(rec.line);
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path, CsvOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FileNotFound, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path.string(), options);
}

}  // namespace hl

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

#include "highlights/highlights.h"

#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <new>
#include <sstream>

#include "highlights/config.hpp"
#include "highlights/detectors.hpp"
#include "highlights/error.hpp"
#include "highlights/highlight_model.hpp"
#include "highlights/ingest.hpp"
#include "highlights/json_number.hpp"
#include "highlights/narrate.hpp"
#include "highlights/query.hpp"
#include "json.hpp"

struct hl_config {
  hl::AppConfig value;
};

struct hl_dataset {
  hl::LoadedDataset value;
};

struct hl_query {
  hl::GroupBySpec value;
};

struct hl_result {
  hl::HighlightReport report;
  hl::CharacterRegistry characters;
};

namespace {

thread_local std::string last_error;

hl_status status_of(hl::ErrorCategory category) {
  switch (category) {
    case hl::ErrorCategory::Config: return HL_ERR_CONFIG;
    case hl::ErrorCategory::Data: return HL_ERR_DATA;
    case hl::ErrorCategory::Query: return HL_ERR_QUERY;
    default: return HL_ERR_INTERNAL;
  }
}

hl_status fail(hl_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename F>
hl_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return HL_OK;
  } catch (const hl::Error& e) {
    return fail(status_of(e.category()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HL_ERR_INTERNAL, "unknown error");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define HL_REQUIRE(cond)                                              \
  do {                                                                \
    if (!(cond)) return fail(HL_ERR_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

std::string profile_text(const std::vector<hl::ColumnProfile>& profiles) {
  auto opt = [](const std::optional<double>& v) { return v ? hl::format_number(*v) : std::string("-"); };
  std::vector<std::vector<std::string>> rows = {{"column", "count", "min", "max", "mean", "distinct", "role"}};
  for (const auto& p : profiles) {
    rows.push_back({p.column, std::to_string(p.count), opt(p.min), opt(p.max), opt(p.mean),
                    std::to_string(p.distinct), std::string(hl::to_string(p.suggestion.role))});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c + 1 < row.size(); ++c) {
      out << std::left << std::setw(static_cast<int>(width[c] + 2)) << row[c];
    }
    out << row.back() << '\n';
  }
  return out.str();
}

}  // namespace

extern "C" {

const char* hl_version(void) { return HL_VERSION_STRING; }

const char* hl_last_error(void) { return last_error.c_str(); }

void hl_string_free(char* s) { std::free(s); }

hl_status hl_config_load(const char* path, hl_config** out) {
  HL_REQUIRE(path && out);
  return guarded([&] { *out = new hl_config{hl::load_app_config(path)}; });
}

hl_status hl_config_set_number(hl_config* config, const char* key, double value) {
  HL_REQUIRE(config && key);
  return guarded([&] {
    auto cfg = config->value.detectors;
    const std::string_view k(key);
    if (k == "k") {
      if (!(value >= 1.0) || value != static_cast<double>(static_cast<long long>(value))) {
        throw hl::Error(hl::Errc::BadConfig, "k must be an integer >= 1");
      }
      cfg.k = static_cast<std::size_t>(value);
    } else if (k == "megaContributorThreshold") {
      cfg.mega_contributor_threshold = value;
    } else if (k == "alpha") {
      cfg.alpha = value;
    } else if (k == "partialDominanceFloor") {
      cfg.partial_dominance_floor = value;
    } else if (k == "seasonalityThreshold") {
      cfg.seasonality_threshold = value;
    } else {
      throw hl::Error(hl::Errc::BadConfig, "unknown numeric setting '" + std::string(k) + "'");
    }
    cfg.validate();
    config->value.detectors = std::move(cfg);
  });
}

hl_status hl_config_set_bool(hl_config* config, const char* key, int value) {
  HL_REQUIRE(config && key);
  return guarded([&] {
    if (std::string_view(key) != "emitNegative") {
      throw hl::Error(hl::Errc::BadConfig, "unknown boolean setting '" + std::string(key) + "'");
    }
    config->value.detectors.emit_negative = value != 0;
  });
}

hl_status hl_config_set_enabled(hl_config* config, const char* detector, int enabled) {
  HL_REQUIRE(config && detector);
  return guarded([&] {
    auto cfg = config->value.detectors;
    if (enabled) {
      cfg.enabled.insert(detector);
    } else {
      cfg.enabled.erase(detector);
    }
    cfg.validate();
    config->value.detectors = std::move(cfg);
  });
}

void hl_config_free(hl_config* config) { delete config; }

hl_status hl_profile(const hl_config* config, char** out) {
  HL_REQUIRE(config && out);
  return guarded([&] {
    const auto table = hl::read_csv(config->value.dataset.fact_table);
    *out = duplicate(profile_text(hl::profile_table(table)));
  });
}

hl_status hl_dataset_load(const hl_config* config, hl_dataset** out) {
  HL_REQUIRE(config && out);
  return guarded([&] { *out = new hl_dataset{hl::load_dataset(config->value.dataset)}; });
}

size_t hl_dataset_warning_count(const hl_dataset* dataset) {
  return dataset ? dataset->value.warnings.size() : 0;
}

const char* hl_dataset_warning(const hl_dataset* dataset, size_t index) {
  if (!dataset || index >= dataset->value.warnings.size()) return nullptr;
  return dataset->value.warnings[index].c_str();
}

void hl_dataset_free(hl_dataset* dataset) { delete dataset; }

hl_status hl_query_load(const char* path, hl_query** out) {
  HL_REQUIRE(path && out);
  return guarded([&] { *out = new hl_query{hl::load_query(path)}; });
}

hl_status hl_query_parse(const char* json, hl_query** out) {
  HL_REQUIRE(json && out);
  return guarded([&] { *out = new hl_query{hl::parse_query(json)}; });
}

void hl_query_free(hl_query* query) { delete query; }

hl_status hl_extract(const hl_config* config, const hl_dataset* dataset, const hl_query* query,
                     const char* timestamp, hl_result** out) {
  HL_REQUIRE(config && dataset && query && out);
  return guarded([&] {
    const auto& loaded = dataset->value;
    const auto result = hl::execute_groupby(loaded.dataset, loaded.characters, query->value);
    hl::RunOptions options;
    if (timestamp) options.timestamp = timestamp;
    *out = new hl_result{hl::run_all(loaded.dataset, result, config->value.detectors, options),
                         loaded.characters};
  });
}

size_t hl_result_highlight_count(const hl_result* result) {
  return result ? result->report.highlights.size() : 0;
}

size_t hl_result_diagnostic_count(const hl_result* result) {
  return result ? result->report.diagnostics.size() : 0;
}

hl_status hl_result_diagnostic(const hl_result* result, size_t index, const char** detector,
                               const char** target, const char** message) {
  HL_REQUIRE(result && index < result->report.diagnostics.size());
  const auto& d = result->report.diagnostics[index];
  if (detector) *detector = d.detector.c_str();
  if (target) *target = d.target.c_str();
  if (message) *message = d.message.c_str();
  return HL_OK;
}

hl_status hl_result_to_json(const hl_result* result, char** out) {
  HL_REQUIRE(result && out);
  return guarded([&] {
    const auto body = nlohmann::ordered_json::parse(hl::serialize_highlights(result->report));
    nlohmann::ordered_json doc;
    doc["schemaVersion"] = "1.0";
    for (const auto& [key, value] : body.items()) doc[key] = value;
    *out = duplicate(doc.dump(2) + "\n");
  });
}

hl_status hl_result_narrate(const hl_result* result, const hl_config* config, hl_format format,
                            char** out) {
  HL_REQUIRE(result && config && out);
  return guarded([&] {
    auto options = config->value.summary;
    options.format = format == HL_FORMAT_MARKDOWN ? hl::TextFormat::Markdown : hl::TextFormat::Text;
    const auto summary = hl::compose_summary(result->report.highlights, result->characters, options);
    *out = duplicate(summary.text() + "\n");
  });
}

void hl_result_free(hl_result* result) { delete result; }

}  // extern "C"

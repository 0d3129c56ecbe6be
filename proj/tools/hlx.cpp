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

// hlx: extracts highlights from a CSV dataset and narrates them.

#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "highlights/highlights.h"

namespace {

struct Options {
  std::string config;
  std::string query;
  std::string out;
  std::string json_out;
  std::string format = "text";
  bool no_timestamp = false;
  std::optional<int> k;
  std::optional<double> mega_threshold;
  std::optional<double> alpha;
  std::optional<bool> emit_negative;
  std::vector<std::string> enable;
  std::vector<std::string> disable;
};

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ConfigPtr = std::unique_ptr<hl_config, Deleter<hl_config, hl_config_free>>;
using DatasetPtr = std::unique_ptr<hl_dataset, Deleter<hl_dataset, hl_dataset_free>>;
using QueryPtr = std::unique_ptr<hl_query, Deleter<hl_query, hl_query_free>>;
using ResultPtr = std::unique_ptr<hl_result, Deleter<hl_result, hl_result_free>>;
using StringPtr = std::unique_ptr<char, Deleter<char, hl_string_free>>;

struct Failure {
  int code;
};

void check(hl_status status) {
  if (status == HL_OK) return;
  std::cerr << "hlx: error: " << hl_last_error() << '\n';
  throw Failure{status == HL_ERR_ARGUMENT ? 5 : static_cast<int>(status)};
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_output(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "hlx: error: cannot write '" << path << "'\n";
    throw Failure{5};
  }
}

ConfigPtr load_config(const Options& o) {
  hl_config* raw = nullptr;
  check(hl_config_load(o.config.c_str(), &raw));
  ConfigPtr config(raw);
  if (o.k) check(hl_config_set_number(raw, "k", *o.k));
  if (o.mega_threshold) check(hl_config_set_number(raw, "megaContributorThreshold", *o.mega_threshold));
  if (o.alpha) check(hl_config_set_number(raw, "alpha", *o.alpha));
  if (o.emit_negative) check(hl_config_set_bool(raw, "emitNegative", *o.emit_negative));
  for (const auto& name : o.enable) check(hl_config_set_enabled(raw, name.c_str(), 1));
  for (const auto& name : o.disable) check(hl_config_set_enabled(raw, name.c_str(), 0));
  return config;
}

ResultPtr extract(const Options& o, const hl_config* config) {
  hl_dataset* raw_dataset = nullptr;
  check(hl_dataset_load(config, &raw_dataset));
  DatasetPtr dataset(raw_dataset);
  for (size_t i = 0; i < hl_dataset_warning_count(raw_dataset); ++i) {
    std::cerr << "hlx: warning: " << hl_dataset_warning(raw_dataset, i) << '\n';
  }
  hl_query* raw_query = nullptr;
  check(hl_query_load(o.query.c_str(), &raw_query));
  QueryPtr query(raw_query);

  const std::string stamp = utc_now();
  hl_result* raw_result = nullptr;
  check(hl_extract(config, raw_dataset, raw_query, o.no_timestamp ? nullptr : stamp.c_str(), &raw_result));
  ResultPtr result(raw_result);
  for (size_t i = 0; i < hl_result_diagnostic_count(raw_result); ++i) {
    const char *detector, *target, *message;
    check(hl_result_diagnostic(raw_result, i, &detector, &target, &message));
    std::cerr << "hlx: diagnostic: " << detector;
    if (*target) std::cerr << " [" << target << "]";
    std::cerr << ": " << message << '\n';
  }
  return result;
}

int run_profile(const Options& o) {
  auto config = load_config(o);
  char* raw = nullptr;
  check(hl_profile(config.get(), &raw));
  StringPtr text(raw);
  write_output(o.out, raw);
  return 0;
}

int run_highlights(const Options& o) {
  auto config = load_config(o);
  auto result = extract(o, config.get());
  char* raw = nullptr;
  check(hl_result_to_json(result.get(), &raw));
  StringPtr json(raw);
  write_output(o.out, raw);
  return 0;
}

int run_narrate(const Options& o) {
  auto config = load_config(o);
  auto result = extract(o, config.get());
  if (!o.json_out.empty()) {
    char* raw = nullptr;
    check(hl_result_to_json(result.get(), &raw));
    StringPtr json(raw);
    write_output(o.json_out, raw);
  }
  char* raw = nullptr;
  check(hl_result_narrate(result.get(), config.get(),
                          o.format == "markdown" ? HL_FORMAT_MARKDOWN : HL_FORMAT_TEXT, &raw));
  StringPtr text(raw);
  write_output(o.out, raw);
  return 0;
}

void add_detector_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--k", o.k, "Top-k size")->check(CLI::PositiveNumber);
  cmd->add_option("--mega-threshold", o.mega_threshold, "Mega-contributor share threshold");
  cmd->add_option("--alpha", o.alpha, "Significance level");
  cmd->add_option("--emit-negative", o.emit_negative, "Report negative results (true/false)");
  cmd->add_option("--enable", o.enable, "Enable a detector")->take_all();
  cmd->add_option("--disable", o.disable, "Disable a detector")->take_all();
  cmd->add_flag("--no-provenance-timestamp", o.no_timestamp, "Omit provenance timestamps");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extract and narrate highlights of multidimensional data", "hlx"};
  app.set_version_flag("--version", std::string(hl_version()));
  app.require_subcommand(1);

  Options o;
  auto* profile = app.add_subcommand("profile", "Per-column statistics and suggested roles");
  profile->add_option("--config", o.config, "Dataset configuration")->required();
  profile->add_option("--out", o.out, "Output file (default stdout)");

  auto* highlights = app.add_subcommand("highlights", "Write the highlights JSON document");
  highlights->add_option("--config", o.config, "Dataset configuration")->required();
  highlights->add_option("--query", o.query, "Group-by query")->required();
  highlights->add_option("--out", o.out, "Output file (default stdout)");
  add_detector_flags(highlights, o);

  auto* narrate = app.add_subcommand("narrate", "Write a text summary of the highlights");
  narrate->add_option("--config", o.config, "Dataset configuration")->required();
  narrate->add_option("--query", o.query, "Group-by query")->required();
  narrate->add_option("--out", o.out, "Output file (default stdout)");
  narrate->add_option("--json-out", o.json_out, "Also write the JSON document here");
  narrate->add_option("--format", o.format, "text or markdown")
      ->check(CLI::IsMember({"text", "markdown"}));
  add_detector_flags(narrate, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return 2;
  }

  try {
    if (*profile) return run_profile(o);
    if (*highlights) return run_highlights(o);
    return run_narrate(o);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "hlx: error: " << e.what() << '\n';
    return 5;
  }
}

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

#include <gtest/gtest.h>

#include <memory>
#include <string>

#include "highlights/highlights.h"
#include "json.hpp"

namespace {

std::string data(const std::string& rel) { return std::string(HL_TEST_DATA_DIR) + "/" + rel; }

struct Deleter {
  void operator()(hl_config* p) const { hl_config_free(p); }
  void operator()(hl_dataset* p) const { hl_dataset_free(p); }
  void operator()(hl_query* p) const { hl_query_free(p); }
  void operator()(hl_result* p) const { hl_result_free(p); }
  void operator()(char* p) const { hl_string_free(p); }
};
template <typename T>
using Owned = std::unique_ptr<T, Deleter>;

Owned<char> take(char* s) { return Owned<char>(s); }

class CitySales : public ::testing::Test {
 protected:
  void SetUp() override {
    hl_config* c = nullptr;
    ASSERT_EQ(hl_config_load(data("city_sales/config.json").c_str(), &c), HL_OK) << hl_last_error();
    config.reset(c);
    hl_dataset* d = nullptr;
    ASSERT_EQ(hl_dataset_load(config.get(), &d), HL_OK) << hl_last_error();
    dataset.reset(d);
    hl_query* q = nullptr;
    ASSERT_EQ(hl_query_load(data("city_sales/query.json").c_str(), &q), HL_OK) << hl_last_error();
    query.reset(q);
  }

  Owned<hl_result> extract(const char* timestamp = nullptr) {
    hl_result* r = nullptr;
    EXPECT_EQ(hl_extract(config.get(), dataset.get(), query.get(), timestamp, &r), HL_OK) << hl_last_error();
    return Owned<hl_result>(r);
  }

  Owned<hl_config> config;
  Owned<hl_dataset> dataset;
  Owned<hl_query> query;
};

TEST_F(CitySales, ExtractAndSerialize) {
  auto r = extract("2026-01-01T00:00:00Z");
  EXPECT_EQ(hl_result_highlight_count(r.get()), 6u);
  ASSERT_EQ(hl_result_diagnostic_count(r.get()), 1u);
  const char *det = nullptr, *target = nullptr, *msg = nullptr;
  ASSERT_EQ(hl_result_diagnostic(r.get(), 0, &det, &target, &msg), HL_OK);
  EXPECT_STREQ(det, "seasonality");
  EXPECT_STREQ(target, "Month");
  EXPECT_EQ(hl_result_diagnostic(r.get(), 1, &det, &target, &msg), HL_ERR_ARGUMENT);

  char* out = nullptr;
  ASSERT_EQ(hl_result_to_json(r.get(), &out), HL_OK);
  auto json = take(out);
  auto doc = nlohmann::json::parse(json.get());
  EXPECT_EQ(doc["schemaVersion"], "1.0");
  EXPECT_EQ(doc["highlights"].size(), 6u);
  EXPECT_EQ(doc["highlights"][0]["provenance"]["timestamp"], "2026-01-01T00:00:00Z");
  EXPECT_EQ(doc["highlights"][2]["details"][0]["characters"][0]["id"], "Athens");
}

TEST_F(CitySales, Narrate) {
  auto r = extract();
  char* out = nullptr;
  ASSERT_EQ(hl_result_narrate(r.get(), config.get(), HL_FORMAT_TEXT, &out), HL_OK);
  auto text = take(out);
  EXPECT_EQ(std::string(text.get()).rfind("In terms of geography, Athens dominates", 0), 0u);
  ASSERT_EQ(hl_result_narrate(r.get(), config.get(), HL_FORMAT_MARKDOWN, &out), HL_OK);
  auto md = take(out);
  EXPECT_NE(std::string(md.get()).find("**Athens**"), std::string::npos);
}

TEST_F(CitySales, DetectorSettings) {
  EXPECT_EQ(hl_config_set_number(config.get(), "megaContributorThreshold", 0.8), HL_OK);
  EXPECT_EQ(hl_config_set_bool(config.get(), "emitNegative", 0), HL_OK);
  EXPECT_EQ(hl_config_set_enabled(config.get(), "dominance", 0), HL_OK);
  auto r = extract();
  // Only the modality highlight remains.
  EXPECT_EQ(hl_result_highlight_count(r.get()), 1u);

  EXPECT_EQ(hl_config_set_number(config.get(), "alpha", 2.0), HL_ERR_CONFIG);
  EXPECT_NE(std::string(hl_last_error()), "");
  EXPECT_EQ(hl_config_set_number(config.get(), "nonsense", 1.0), HL_ERR_CONFIG);
  EXPECT_EQ(hl_config_set_enabled(config.get(), "outliers", 1), HL_ERR_CONFIG);
}

TEST_F(CitySales, QueryErrors) {
  hl_query* q = nullptr;
  ASSERT_EQ(hl_query_parse(R"({"groupBy":["City"],"measure":"Revenue","agg":"sum"})", &q), HL_OK);
  Owned<hl_query> bad(q);
  hl_result* r = nullptr;
  EXPECT_EQ(hl_extract(config.get(), dataset.get(), bad.get(), nullptr, &r), HL_ERR_QUERY);
  EXPECT_EQ(r, nullptr);
  EXPECT_NE(std::string(hl_last_error()).find("Revenue"), std::string::npos);
  EXPECT_EQ(hl_query_parse("{", &q), HL_ERR_QUERY);
}

TEST_F(CitySales, Profile) {
  char* out = nullptr;
  ASSERT_EQ(hl_profile(config.get(), &out), HL_OK);
  auto text = take(out);
  std::string s(text.get());
  EXPECT_NE(s.find("Sales"), std::string::npos);
  EXPECT_NE(s.find("City"), std::string::npos);
}

TEST(CApi, ArgumentAndConfigErrors) {
  EXPECT_NE(std::string(hl_version()), "");
  hl_config* c = nullptr;
  EXPECT_EQ(hl_config_load(nullptr, &c), HL_ERR_ARGUMENT);
  EXPECT_EQ(hl_config_load("/nonexistent/config.json", &c), HL_ERR_CONFIG);
  EXPECT_NE(std::string(hl_last_error()).find("/nonexistent/config.json"), std::string::npos);
  EXPECT_EQ(c, nullptr);
  EXPECT_EQ(hl_extract(nullptr, nullptr, nullptr, nullptr, nullptr), HL_ERR_ARGUMENT);
  hl_config_free(nullptr);
  hl_dataset_free(nullptr);
  hl_query_free(nullptr);
  hl_result_free(nullptr);
  hl_string_free(nullptr);
}

}  // namespace

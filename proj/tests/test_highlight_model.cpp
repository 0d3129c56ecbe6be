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

#include <random>

#include "highlights/detectors.hpp"
#include "highlights/error.hpp"
#include "highlights/highlight_model.hpp"
#include "highlights/json_number.hpp"
#include "json.hpp"
#include "support.hpp"

namespace hl {
namespace {

Character athens() { return {"City", "Athens", "Athens", {}, std::nullopt}; }

HolisticHighlight mega_athens() {
  HolisticHighlight h;
  h.type = "Mega-contributor";
  h.algorithm = "Marginal Share";
  h.model_type = "Contribution Balance";
  h.model = "Mega-contributor present";
  h.score_type = "share of total";
  h.score = 0.75;
  h.measure = {standard_role("main measure"), "Sales", "kEUR"};
  h.explanators = {{standard_role("breakdown axis"), "City"}};
  ElementaryHighlight e;
  e.type = "Mega-contributor";
  e.characters = {{standard_role("mega-contributor"), athens()}};
  e.measure_value = 2100;
  e.score_type = "share of total";
  e.score = 0.75;
  h.details = {e};
  h.provenance = {"H1", "q", "d", std::nullopt};
  return h;
}

bool has_reason(const std::vector<HighlightViolation>& v, std::string_view text) {
  for (const auto& x : v) {
    if (x.reason.find(text) != std::string::npos) return true;
  }
  return false;
}

TEST(Validation, WellFormedHighlight) {
  EXPECT_TRUE(validate_highlight(mega_athens(), HighlightCatalog::standard()).empty());
}

TEST(Validation, PValueOutOfRange) {
  HolisticHighlight h;
  h.type = "Distribution";
  h.algorithm = "Shapiro-Wilk";
  h.model_type = "Distribution Shape";
  h.model = "Normal";
  h.score_type = "p-value";
  h.score = 1.5;
  h.measure = {standard_role("main measure"), "Sales", "kEUR"};
  auto v = validate_highlight(h, HighlightCatalog::standard());
  EXPECT_TRUE(has_reason(v, "score out of range"));
  h.score = 0.5;
  EXPECT_TRUE(validate_highlight(h, HighlightCatalog::standard()).empty());
}

TEST(Validation, DuplicateCharacterType) {
  auto h = mega_athens();
  h.details[0].characters.push_back({standard_role("mega-contributor"), {"City", "Rhodes", "Rhodes", {}, {}}});
  EXPECT_TRUE(has_reason(validate_highlight(h, HighlightCatalog::standard()), "duplicate character type"));
}

TEST(Validation, CatalogConstraints) {
  const auto& catalog = HighlightCatalog::standard();
  auto h = mega_athens();
  h.model = "Full domination";
  EXPECT_TRUE(has_reason(validate_highlight(h, catalog), "outside model type domain"));
  h = mega_athens();
  h.algorithm = "Kendall";
  EXPECT_TRUE(has_reason(validate_highlight(h, catalog), "not a candidate"));
  h = mega_athens();
  h.model_type = "Modality";
  EXPECT_FALSE(validate_highlight(h, catalog).empty());
  h = mega_athens();
  h.details.push_back(h.details[0]);
  EXPECT_TRUE(has_reason(validate_highlight(h, catalog), "duplicate character set"));
  h = mega_athens();
  h.details[0].characters.clear();
  EXPECT_TRUE(has_reason(validate_highlight(h, catalog), "empty character set"));
  h = mega_athens();
  h.details[0].type = "Peak";
  EXPECT_TRUE(has_reason(validate_highlight(h, catalog), "does not match"));
  h = mega_athens();
  h.score_type = "bananas";
  EXPECT_TRUE(has_reason(validate_highlight(h, catalog), "unregistered score type"));
}

TEST(Validation, CharactersResolveAgainstRegistry) {
  CharacterRegistry reg;
  reg.add_type({"City", {}, false});
  auto h = mega_athens();
  EXPECT_TRUE(has_reason(validate_highlight(h, HighlightCatalog::standard(), &reg), "unresolvable"));
  reg.add(athens());
  EXPECT_TRUE(validate_highlight(h, HighlightCatalog::standard(), &reg).empty());
}

TEST(Catalog, AlgorithmDeterminesOneModelType) {
  const auto& catalog = HighlightCatalog::standard();
  for (const auto& [name, info] : catalog.algorithms()) {
    EXPECT_NE(catalog.model_type(info.model_type), nullptr) << name;
    const auto candidates = catalog.candidates(info.highlight_type);
    EXPECT_NE(std::find(candidates.begin(), candidates.end(), name), candidates.end());
  }
  HighlightCatalog copy = catalog;
  EXPECT_THROW(copy.add_algorithm({"Kendall", "Correlation", "Trend Direction"}), Error);
  EXPECT_NO_THROW(copy.add_algorithm({"Kendall", "Correlation", "Correlation Strength"}));
}

TEST(Catalog, ParameterizedModels) {
  const auto* periodicity = HighlightCatalog::standard().model_type("Periodicity");
  ASSERT_NE(periodicity, nullptr);
  EXPECT_TRUE(periodicity->contains("Seasonal(lag=12)"));
  EXPECT_TRUE(periodicity->contains("Not seasonal"));
  EXPECT_FALSE(periodicity->contains("Seasonal(lag=0)"));
  EXPECT_FALSE(periodicity->contains("Seasonal(lag=x)"));
  EXPECT_FALSE(periodicity->contains("Seasonal(lag=)"));
}

TEST(Serialization, EmptyReport) {
  EXPECT_EQ(serialize_highlights({}), R"({"highlights":[],"diagnostics":[]})");
}

TEST(Serialization, MegaContributorFields) {
  HighlightReport report;
  report.highlights = {mega_athens()};
  auto doc = nlohmann::json::parse(serialize_highlights(report));
  const auto& h = doc["highlights"][0];
  EXPECT_EQ(h["kind"], "holistic");
  EXPECT_EQ(h["type"], "Mega-contributor");
  EXPECT_EQ(h["score"], 0.75);
  EXPECT_EQ(h["details"][0]["characters"][0]["id"], "Athens");
  EXPECT_EQ(h["details"][0]["characters"][0]["characterType"], "City");
  EXPECT_EQ(h["details"][0]["measureValue"], 2100);
  EXPECT_FALSE(h["provenance"].contains("timestamp"));
}

TEST(Serialization, RejectsInvalidHighlight) {
  HighlightReport report;
  report.highlights = {mega_athens()};
  report.highlights[0].score = 3;
  try {
    serialize_highlights(report);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidHighlight);
  }
}

TEST(Serialization, MalformedDocument) {
  EXPECT_THROW(deserialize_highlights("{"), Error);
  EXPECT_THROW(deserialize_highlights(R"({"highlights":[{"kind":"elementary"}],"diagnostics":[]})"), Error);
  EXPECT_THROW(deserialize_highlights(R"({"diagnostics":[]})"), Error);
}

TEST(Serialization, RoundTripCitySales) {
  auto t = testing::load_city_sales();
  auto cfg = t.config.detectors;
  cfg.enabled = {DetectorConfig::all_detectors().begin(), DetectorConfig::all_detectors().end()};
  auto report = run_all(t.loaded.dataset, t.result, cfg, {std::string("2026-01-01T00:00:00Z")});
  auto text = serialize_highlights(report);
  auto back = deserialize_highlights(text);
  EXPECT_TRUE(back == report);
  EXPECT_EQ(serialize_highlights(back), text);
}

TEST(Serialization, RoundTripRandomGrids) {
  std::mt19937_64 rng(5);
  DetectorConfig cfg;
  cfg.enabled = {DetectorConfig::all_detectors().begin(), DetectorConfig::all_detectors().end()};
  for (int trial = 0; trial < 100; ++trial) {
    auto g = testing::random_grid(rng, 1 + rng() % 6, 1 + rng() % 6, 2, 50);
    if (g.dataset.facts.empty()) continue;
    auto r = execute_groupby(g.dataset, g.characters, testing::sum_spec());
    auto report = run_all(g.dataset, r, cfg);
    auto text = serialize_highlights(report);
    auto back = deserialize_highlights(text);
    EXPECT_TRUE(back == report);
    EXPECT_EQ(serialize_highlights(back), text);
  }
}

TEST(Serialization, Deterministic) {
  auto t = testing::load_city_sales();
  auto a = serialize_highlights(run_all(t.loaded.dataset, t.result, t.config.detectors));
  auto t2 = testing::load_city_sales();
  auto b = serialize_highlights(run_all(t2.loaded.dataset, t2.result, t2.config.detectors));
  EXPECT_EQ(a, b);
}

TEST(Numbers, ShortestText) {
  EXPECT_EQ(format_number(1000), "1000");
  EXPECT_EQ(format_number(2100), "2100");
  EXPECT_EQ(format_number(-5), "-5");
  EXPECT_EQ(format_number(0.75), "0.75");
  EXPECT_EQ(format_number(1280.0 / 2800.0), "0.457142857143");
  EXPECT_EQ(format_number(1e-4), "0.0001");
  EXPECT_EQ(format_number(1234.5), "1234.5");
  EXPECT_EQ(format_number(0.0), "0");
}

TEST(Digest, KnownValues) {
  EXPECT_EQ(digest(""), "cbf29ce484222325");
  EXPECT_EQ(digest("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(digest("foobar"), "85944171f73967e8");
}

}  // namespace
}  // namespace hl

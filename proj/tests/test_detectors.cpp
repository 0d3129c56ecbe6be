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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "highlights/detectors.hpp"
#include "highlights/error.hpp"
#include "highlights/stats.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace hl {
namespace {

using Vec = std::vector<double>;

const MeasureType kSales{"Sales", "kEUR", MeasureKind::Base, std::nullopt, std::nullopt};
const MeasureType kUnits{"Units", "items", MeasureKind::Base, std::nullopt, std::nullopt};

SeriesView series(const Vec& values) {
  SeriesView s{"Month", true, {}};
  for (std::size_t i = 0; i < values.size(); ++i) {
    Character c{"Month", "m" + std::to_string(i), "M" + std::to_string(i), {}, static_cast<std::int64_t>(i)};
    s.points.push_back({c, values[i]});
  }
  return s;
}

void expect_valid(const DetectorOutcome& o) {
  ASSERT_TRUE(o.highlight);
  auto violations = validate_highlight(*o.highlight, HighlightCatalog::standard());
  for (const auto& v : violations) ADD_FAILURE() << v.where << ": " << v.reason;
}

TEST(Distribution, NormalSample) {
  std::ifstream in(testing::data_dir() / "oracle" / "shapiro_wilk_reference.json");
  auto doc = nlohmann::json::parse(in);
  for (const auto& s : doc["samples"]) {
    if (s["name"] != "normal200") continue;
    auto o = detect_distribution(s["values"].get<Vec>(), kSales, {});
    expect_valid(o);
    EXPECT_EQ(o.highlight->model, "Normal");
    EXPECT_EQ(o.highlight->algorithm, "Shapiro-Wilk");
    EXPECT_EQ(o.highlight->score_type, "p-value");
    EXPECT_NEAR(o.highlight->score, s["p"].get<double>(), 1e-3);
  }
}

TEST(Distribution, GridIsUniform) {
  Vec grid(100);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = i / 99.0;
  auto o = detect_distribution(grid, kSales, {});
  expect_valid(o);
  EXPECT_EQ(o.highlight->model, "Uniform");
  EXPECT_EQ(o.highlight->algorithm, "Kolmogorov-Smirnov");
  EXPECT_EQ(o.highlight->model_type, "Distribution Shape");
}

TEST(Distribution, ClusteredIsUnclassified) {
  Vec x(100);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::pow(i / 99.0, 6);
  auto o = detect_distribution(x, kSales, {});
  expect_valid(o);
  EXPECT_EQ(o.highlight->model, "Unclassified");
  EXPECT_LE(o.highlight->score, 0.05);
  DetectorConfig quiet;
  quiet.emit_negative = false;
  EXPECT_FALSE(detect_distribution(x, kSales, quiet).highlight);
}

TEST(Distribution, TooFewValues) {
  auto o = detect_distribution(Vec{1, 2}, kSales, {});
  EXPECT_FALSE(o.highlight);
  EXPECT_EQ(o.diagnostic.rfind("insufficient data", 0), 0u);
}

TEST(Correlation, Bins) {
  CorrelationBins bins;
  EXPECT_EQ(correlation_model(0.83, bins), "Positively Significant");
  EXPECT_EQ(correlation_model(0.5, bins), "Moderately Positively Significant");
  EXPECT_EQ(correlation_model(0.1, bins), "Insignificant");
  EXPECT_EQ(correlation_model(-0.5, bins), "Moderately Negatively Significant");
  EXPECT_EQ(correlation_model(-0.9, bins), "Negatively Significant");
}

TEST(Correlation, IdenticalSeries) {
  Vec x{3, 1, 4, 1.5, 9, 2.6};
  auto o = detect_correlation(x, x, kSales, kUnits, {});
  expect_valid(o);
  EXPECT_EQ(o.highlight->model, "Positively Significant");
  EXPECT_EQ(o.highlight->score, 1.0);
  EXPECT_EQ(o.highlight->algorithm, "Kendall");
  EXPECT_EQ(o.highlight->score_type, "tau");
  ASSERT_EQ(o.highlight->explanators.size(), 1u);
  EXPECT_EQ(o.highlight->explanators[0].feature, "Units");
}

TEST(Correlation, TauMinusHalf) {
  // Nine values have 36 pairs; 27 discordant pairs give tau = -0.5.
  Vec x(9), y(9);
  std::iota(x.begin(), x.end(), 0.0);
  std::iota(y.begin(), y.end(), 0.0);
  auto inversions = [](const Vec& v) {
    int c = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) c += v[i] > v[j];
    return c;
  };
  while (inversions(y) != 27) std::next_permutation(y.begin(), y.end());
  auto o = detect_correlation(x, y, kSales, kUnits, {});
  expect_valid(o);
  EXPECT_DOUBLE_EQ(o.highlight->score, -0.5);
  EXPECT_EQ(o.highlight->model, "Moderately Negatively Significant");
}

TEST(Correlation, AlternativeAlgorithmsAndFailures) {
  DetectorConfig cfg;
  cfg.correlation_algorithm = CorrelationAlgorithm::Pearson;
  auto o = detect_correlation(Vec{1, 2, 3, 4}, Vec{1, 3, 2, 4}, kSales, kUnits, cfg);
  expect_valid(o);
  EXPECT_EQ(o.highlight->algorithm, "Pearson");
  EXPECT_NEAR(o.highlight->score, 0.8, 1e-12);
  EXPECT_EQ(o.highlight->model, "Positively Significant");
  cfg.correlation_algorithm = CorrelationAlgorithm::Spearman;
  EXPECT_EQ(detect_correlation(Vec{1, 2, 3}, Vec{3, 1, 2}, kSales, kUnits, cfg).highlight->score_type, "rho");
  auto constant = detect_correlation(Vec{1, 1, 1}, Vec{1, 2, 3}, kSales, kUnits, {});
  EXPECT_FALSE(constant.highlight);
  EXPECT_EQ(constant.diagnostic.rfind("constant input", 0), 0u);
}

TEST(Trend, Directions) {
  Vec up(10);
  std::iota(up.begin(), up.end(), 1.0);
  auto o = detect_trend(series(up), kSales, {});
  expect_valid(o);
  EXPECT_EQ(o.highlight->model, "Increasing");
  EXPECT_LT(o.highlight->score, 0.05);
  EXPECT_EQ(o.highlight->explanators.at(0).feature, "Month");
  Vec down(up.rbegin(), up.rend());
  EXPECT_EQ(detect_trend(series(down), kSales, {}).highlight->model, "Decreasing");
  auto flat = detect_trend(series({715, 1280, 805}), kSales, {});
  expect_valid(flat);
  EXPECT_EQ(flat.highlight->model, "No trend");
}

TEST(Trend, SparseSeriesIsSkipped) {
  auto s = series({1, 2, 3, 4});
  s.points[2].value.reset();
  auto o = detect_trend(s, kSales, {});
  EXPECT_FALSE(o.highlight);
  EXPECT_EQ(o.diagnostic.rfind("sparse series", 0), 0u);
}

TEST(Seasonality, Examples) {
  auto o = detect_seasonality(series({1, 5, 1, 5, 1, 5}), kSales, {});
  expect_valid(o);
  EXPECT_EQ(o.highlight->model, "Seasonal(lag=2)");
  EXPECT_NEAR(o.highlight->score, 16.0 / 24.0, 1e-12);
  EXPECT_TRUE(o.highlight->details.empty());

  auto short_series = detect_seasonality(series({715, 1280, 805}), kSales, {});
  EXPECT_FALSE(short_series.highlight);
  EXPECT_EQ(short_series.diagnostic.rfind("insufficient data", 0), 0u);

  auto constant = detect_seasonality(series({2, 2, 2, 2, 2, 2}), kSales, {});
  EXPECT_FALSE(constant.highlight);
  EXPECT_EQ(constant.diagnostic.rfind("constant input", 0), 0u);

  auto none = detect_seasonality(series({1, 2, 3, 4, 5, 6, 7}), kSales, {});
  ASSERT_TRUE(none.highlight);
  EXPECT_EQ(none.highlight->model, "Not seasonal");
}

TEST(Modality, Examples) {
  auto o = detect_modality(series({715, 1280, 805}), kSales, {});
  expect_valid(o);
  EXPECT_EQ(o.highlight->model, "Unimodal");
  ASSERT_EQ(o.highlight->details.size(), 1u);
  EXPECT_EQ(o.highlight->details[0].characters[0].character.id, "m1");
  EXPECT_EQ(o.highlight->details[0].characters[0].role.name, "peak position");
  EXPECT_EQ(o.highlight->details[0].measure_value, 1280);
  EXPECT_NEAR(o.highlight->score, 1280.0 / (2800.0 / 3.0), 1e-12);

  auto bi = detect_modality(series({1, 2, 1, 3, 1}), kSales, {});
  expect_valid(bi);
  EXPECT_EQ(bi.highlight->model, "Bimodal");
  EXPECT_EQ(bi.highlight->details[0].characters[0].character.id, "m1");
  EXPECT_EQ(bi.highlight->details[1].characters[0].character.id, "m3");

  auto mono = detect_modality(series({1, 2, 3, 4}), kSales, {});
  EXPECT_EQ(mono.highlight->model, "Unimodal");
  EXPECT_EQ(mono.highlight->details[0].characters[0].character.id, "m3");

  EXPECT_EQ(detect_modality(series({1, 2, 1, 3, 1, 4}), kSales, {}).highlight->model, "Multimodal");
  EXPECT_FALSE(detect_modality(series({2, 2, 2}), kSales, {}).highlight);
}

TEST(TopK, CitySales) {
  auto t = testing::load_city_sales();
  DetectorConfig cfg;
  cfg.k = 1;
  auto one = detect_topk(t.result, cfg);
  expect_valid(one);
  ASSERT_EQ(one.highlight->details.size(), 1u);
  const auto& top = one.highlight->details[0];
  EXPECT_EQ(top.characters[0].character.id, "Athens");
  EXPECT_EQ(top.characters[1].character.description, "May 2023");
  EXPECT_EQ(top.measure_value, 1000);
  EXPECT_EQ(top.score, 1);

  cfg.k = 3;
  auto three = detect_topk(t.result, cfg);
  ASSERT_EQ(three.highlight->details.size(), 3u);
  const std::vector<std::pair<std::string, double>> want = {{"May 2023", 1000}, {"June 2023", 600}, {"April 2023", 500}};
  for (std::size_t r = 0; r < 3; ++r) {
    const auto& d = three.highlight->details[r];
    EXPECT_EQ(d.characters[0].character.id, "Athens");
    EXPECT_EQ(d.characters[1].character.description, want[r].first);
    EXPECT_EQ(d.measure_value, want[r].second);
    EXPECT_EQ(d.score, static_cast<double>(r + 1));
  }
  EXPECT_EQ(three.highlight->model, "Top-k(k=3)");

  cfg.k = 50;
  auto all = detect_topk(t.result, cfg);
  expect_valid(all);
  EXPECT_EQ(all.highlight->details.size(), 12u);
  EXPECT_EQ(all.highlight->model, "Top-k(k=12)");
}

TEST(MegaContributor, CitySales) {
  auto t = testing::load_city_sales();
  auto city = detect_mega_contributors(t.result, 0, {});
  expect_valid(city);
  ASSERT_EQ(city.highlight->details.size(), 1u);
  EXPECT_EQ(city.highlight->details[0].characters[0].character.id, "Athens");
  EXPECT_NEAR(city.highlight->details[0].score, 0.75, 1e-9);
  EXPECT_EQ(city.highlight->model, "Mega-contributor present");
  auto month = detect_mega_contributors(t.result, 1, {});
  expect_valid(month);
  ASSERT_EQ(month.highlight->details.size(), 1u);
  EXPECT_EQ(month.highlight->details[0].characters[0].character.id, "2023-05");
  EXPECT_NEAR(month.highlight->details[0].score, 1280.0 / 2800.0, 1e-9);

  DetectorConfig high;
  high.mega_contributor_threshold = 0.8;
  auto balanced = detect_mega_contributors(t.result, 0, high);
  expect_valid(balanced);
  EXPECT_EQ(balanced.highlight->model, "Balanced contribution");
  EXPECT_NEAR(balanced.highlight->score, 0.75, 1e-9);
}

TEST(MegaContributor, SingleCharacterAndSkips) {
  auto g = testing::make_grid({"only"}, {"b1", "b2"});
  testing::add_fact(g, "only", "b1", 3);
  testing::add_fact(g, "only", "b2", 4);
  auto r = execute_groupby(g.dataset, g.characters, testing::sum_spec());
  auto o = detect_mega_contributors(r, 0, {});
  ASSERT_TRUE(o.highlight);
  EXPECT_EQ(o.highlight->details.at(0).score, 1.0);

  auto avg = testing::sum_spec();
  avg.aggregate = AggregateFunction::Avg;
  EXPECT_FALSE(detect_mega_contributors(execute_groupby(g.dataset, g.characters, avg), 0, {}).highlight);

  auto neg = testing::make_grid({"a"}, {"b"});
  testing::add_fact(neg, "a", "b", -5);
  auto skipped = detect_mega_contributors(execute_groupby(neg.dataset, neg.characters, testing::sum_spec()), 0, {});
  EXPECT_FALSE(skipped.highlight);
  EXPECT_FALSE(skipped.diagnostic.empty());
}

TEST(MegaContributor, SharesBoundedAndFlagCountLimited) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = testing::random_grid(rng, 1 + rng() % 10, 1 + rng() % 10, 2, 9);
    for (auto& f : g.dataset.facts) f.values[2] = std::fabs(std::get<double>(f.values[2]));
    if (g.dataset.facts.empty()) continue;
    auto r = execute_groupby(g.dataset, g.characters, testing::sum_spec());
    DetectorConfig cfg;
    cfg.mega_contributor_threshold = 0.05 + 0.9 * (rng() % 100) / 100.0;
    for (std::size_t axis = 0; axis < 2; ++axis) {
      auto o = detect_mega_contributors(r, axis, cfg);
      if (!o.highlight) continue;
      double total = 0;
      for (const auto& d : o.highlight->details) total += d.score;
      EXPECT_LE(total, 1.0 + 1e-9);
      EXPECT_LE(o.highlight->details.size(),
                static_cast<std::size_t>(std::floor(1.0 / cfg.mega_contributor_threshold)));
    }
  }
}

TEST(Dominance, CitySales) {
  auto t = testing::load_city_sales();
  auto city = detect_dominance(t.result, 0, {});
  expect_valid(city);
  EXPECT_EQ(city.highlight->model, "Full domination");
  ASSERT_EQ(city.highlight->details.size(), 1u);
  EXPECT_EQ(city.highlight->details[0].characters[0].character.id, "Athens");
  EXPECT_EQ(city.highlight->details[0].score, 1.0);
  auto month = detect_dominance(t.result, 1, {});
  expect_valid(month);
  ASSERT_EQ(month.highlight->details.size(), 1u);
  EXPECT_EQ(month.highlight->details[0].characters[0].character.description, "May 2023");
  EXPECT_EQ(month.highlight->details[0].score, 1.0);
}

TEST(Dominance, OneGrouperIsSkipped) {
  auto t = testing::load_city_sales();
  auto spec = t.spec;
  spec.groupers = {"City"};
  auto r = execute_groupby(t.loaded.dataset, t.loaded.characters, spec);
  auto o = detect_dominance(r, 0, {});
  EXPECT_FALSE(o.highlight);
  EXPECT_FALSE(o.diagnostic.empty());
}

TEST(Dominance, PartialDomination) {
  // a0 beats a1..a3 except a3 in one slice; a0 dominates 2 of 3 peers.
  auto g = testing::make_grid({"a0", "a1", "a2", "a3"}, {"b0", "b1"});
  for (auto [a, b, v] : std::vector<std::tuple<std::string, std::string, double>>{
           {"a0", "b0", 9}, {"a0", "b1", 9}, {"a1", "b0", 1}, {"a1", "b1", 1},
           {"a2", "b0", 2}, {"a2", "b1", 2}, {"a3", "b0", 10}, {"a3", "b1", 3}}) {
    testing::add_fact(g, a, b, v);
  }
  auto r = execute_groupby(g.dataset, g.characters, testing::sum_spec());
  DetectorConfig cfg;
  cfg.partial_dominance_floor = 0.6;
  auto o = detect_dominance(r, 0, cfg);
  expect_valid(o);
  EXPECT_EQ(o.highlight->model, "Partial domination");
  ASSERT_EQ(o.highlight->details.size(), 2u);
  EXPECT_NEAR(o.highlight->details[0].score, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(o.highlight->details[1].score, 2.0 / 3.0, 1e-12);
  EXPECT_FALSE(detect_dominance(r, 0, {}).highlight);
}

TEST(Dominance, MatchesBruteForceOracle) {
  std::mt19937_64 rng(31);
  int checked = 0;
  while (checked < 200) {
    auto g = testing::random_grid(rng, 2 + rng() % 9, 1 + rng() % 10, 1 + rng() % 2, 5);
    if (g.dataset.facts.empty()) continue;
    auto r = execute_groupby(g.dataset, g.characters, testing::sum_spec());
    for (std::size_t axis = 0; axis < 2; ++axis) {
      if (r.axes()[axis].members.size() < 2) continue;
      DetectorConfig cfg;
      auto want = testing::dominance_oracle(r, axis, cfg.partial_dominance_floor);
      auto got = detect_dominance(r, axis, cfg);
      ASSERT_EQ(got.highlight.has_value(), !want.empty());
      if (!got.highlight) continue;
      expect_valid(got);
      ASSERT_EQ(got.highlight->details.size(), want.size());
      for (std::size_t i = 0; i < want.size(); ++i) {
        EXPECT_EQ(got.highlight->details[i].characters[0].character.id, want[i].id);
        EXPECT_EQ(got.highlight->details[i].score, want[i].score);
      }
      const bool full = std::any_of(want.begin(), want.end(), [](const auto& e) { return e.score == 1.0; });
      EXPECT_EQ(got.highlight->model, full ? "Full domination" : "Partial domination");
    }
    ++checked;
  }
}

TEST(TopK, MatchesSortOracle) {
  std::mt19937_64 rng(32);
  int checked = 0;
  while (checked < 200) {
    auto g = testing::random_grid(rng, 1 + rng() % 10, 1 + rng() % 10, 1 + rng() % 2, 5);
    if (g.dataset.facts.empty()) continue;
    auto r = execute_groupby(g.dataset, g.characters, testing::sum_spec());
    auto cells = testing::topk_oracle(r);
    DetectorConfig cfg;
    cfg.k = 1 + rng() % 12;
    auto got = detect_topk(r, cfg);
    expect_valid(got);
    const std::size_t k = std::min<std::size_t>(cfg.k, cells.size());
    ASSERT_EQ(got.highlight->details.size(), k);
    for (std::size_t n = 0; n < k; ++n) {
      const auto& d = got.highlight->details[n];
      EXPECT_EQ(d.characters[0].character, r.axes()[0].members[cells[n].i]);
      EXPECT_EQ(d.characters[1].character, r.axes()[1].members[cells[n].j]);
      EXPECT_EQ(d.measure_value, cells[n].v);
      EXPECT_EQ(d.score, static_cast<double>(n + 1));
    }
    ++checked;
  }
}

TEST(RunAll, CitySalesDefaultSuite) {
  auto t = testing::load_city_sales();
  auto report = run_all(t.loaded.dataset, t.result, t.config.detectors);
  std::vector<std::string> types;
  for (const auto& h : report.highlights) types.push_back(h.type + "/" + h.model);
  EXPECT_EQ(types, (std::vector<std::string>{"Dominance/Full domination", "Dominance/Full domination",
                                             "Mega-contributor/Mega-contributor present",
                                             "Mega-contributor/Mega-contributor present", "Modality/Unimodal",
                                             "Trend/No trend"}));
  for (std::size_t i = 0; i < report.highlights.size(); ++i) {
    EXPECT_EQ(report.highlights[i].provenance.id, "H" + std::to_string(i + 1));
    EXPECT_TRUE(validate_highlight(report.highlights[i], HighlightCatalog::standard(), &t.loaded.characters).empty());
  }
  ASSERT_EQ(report.diagnostics.size(), 1u);
  EXPECT_EQ(report.diagnostics[0].detector, "seasonality");
  EXPECT_EQ(report.diagnostics[0].message.rfind("insufficient data", 0), 0u);
}

TEST(RunAll, AllDisabled) {
  auto t = testing::load_city_sales();
  DetectorConfig cfg;
  cfg.enabled.clear();
  auto report = run_all(t.loaded.dataset, t.result, cfg);
  EXPECT_TRUE(report.highlights.empty());
  EXPECT_TRUE(report.diagnostics.empty());
}

TEST(RunAll, OneGrouperResult) {
  auto t = testing::load_city_sales();
  auto spec = t.spec;
  spec.groupers = {"Month"};
  auto r = execute_groupby(t.loaded.dataset, t.loaded.characters, spec);
  auto report = run_all(t.loaded.dataset, r, t.config.detectors);
  std::vector<std::string> types;
  for (const auto& h : report.highlights) types.push_back(h.type);
  EXPECT_EQ(types, (std::vector<std::string>{"Mega-contributor", "Modality", "Trend"}));
}

TEST(RunAll, CorrelationOverRawFacts) {
  auto g = testing::make_grid({"a", "b", "c", "d", "e"}, {"x"});
  g.dataset.schema = Schema("grid", {{"A", FeatureKind::Identifier, std::nullopt},
                                     {"B", FeatureKind::Identifier, std::nullopt},
                                     {"V", FeatureKind::Numeric, std::nullopt},
                                     {"W", FeatureKind::Numeric, std::nullopt}});
  g.dataset.measures.push_back({"W", "u", MeasureKind::Base, std::nullopt, std::nullopt});
  const Vec v{1, 2, 3, 4, 5}, w{2, 4, 5, 4, 9};
  const std::vector<std::string> ids{"a", "b", "c", "d", "e"};
  for (std::size_t i = 0; i < ids.size(); ++i) {
    g.dataset.facts.push_back({{Value(ids[i]), Value(std::string("x")), Value(v[i]), Value(w[i])}});
  }
  DetectorConfig cfg;
  cfg.enabled = {detector::kCorrelation};
  auto r = execute_groupby(g.dataset, g.characters, testing::sum_spec({"A"}));
  auto report = run_all(g.dataset, r, cfg);
  ASSERT_EQ(report.highlights.size(), 1u);
  EXPECT_EQ(report.highlights[0].measure.name, "V");
  EXPECT_EQ(report.highlights[0].explanators[0].feature, "W");
  EXPECT_DOUBLE_EQ(report.highlights[0].score, stats::kendall_tau(v, w).statistic);
}

TEST(RunAll, DistributionAndTopKOptIn) {
  auto t = testing::load_city_sales();
  auto cfg = t.config.detectors;
  cfg.enabled.insert(detector::kTopK);
  cfg.enabled.insert(detector::kDistribution);
  auto report = run_all(t.loaded.dataset, t.result, cfg);
  std::vector<std::string> types;
  for (const auto& h : report.highlights) types.push_back(h.type);
  EXPECT_EQ(types, (std::vector<std::string>{"Distribution", "Dominance", "Dominance", "Mega-contributor",
                                             "Mega-contributor", "Modality", "Top-k", "Trend"}));
}

TEST(RunAll, Deterministic) {
  auto t = testing::load_city_sales();
  auto a = run_all(t.loaded.dataset, t.result, t.config.detectors);
  auto b = run_all(t.loaded.dataset, t.result, t.config.detectors);
  EXPECT_EQ(serialize_highlights(a), serialize_highlights(b));
}

TEST(RunAll, ScalingKeepsArgmaxResults) {
  auto t = testing::load_city_sales();
  auto scaled = t.loaded.dataset;
  const auto idx = *scaled.schema.index_of("Sales");
  for (auto& f : scaled.facts) f.values[idx] = std::get<double>(f.values[idx]) * 7.3;
  auto r2 = execute_groupby(scaled, t.loaded.characters, t.spec);
  auto cfg = t.config.detectors;
  cfg.enabled.insert(detector::kTopK);
  auto a = run_all(t.loaded.dataset, t.result, cfg);
  auto b = run_all(scaled, r2, cfg);
  ASSERT_EQ(a.highlights.size(), b.highlights.size());
  for (std::size_t i = 0; i < a.highlights.size(); ++i) {
    EXPECT_EQ(a.highlights[i].model, b.highlights[i].model);
    ASSERT_EQ(a.highlights[i].details.size(), b.highlights[i].details.size());
    for (std::size_t d = 0; d < a.highlights[i].details.size(); ++d) {
      EXPECT_EQ(a.highlights[i].details[d].characters, b.highlights[i].details[d].characters);
      EXPECT_NEAR(a.highlights[i].details[d].score, b.highlights[i].details[d].score, 1e-9);
    }
  }
}

TEST(Config, Validation) {
  DetectorConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.alpha = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.enabled.insert("outliers");
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.k = 0;
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_EQ(parse_correlation_algorithm("Spearman"), CorrelationAlgorithm::Spearman);
  EXPECT_FALSE(parse_correlation_algorithm("Cosine"));
}

}  // namespace
}  // namespace hl

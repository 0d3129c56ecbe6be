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

// Shared fixtures for the test binaries.

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "highlights/config.hpp"
#include "highlights/core_model.hpp"
#include "highlights/ingest.hpp"
#include "highlights/query.hpp"

namespace hl::testing {

inline std::filesystem::path data_dir() { return HL_TEST_DATA_DIR; }

inline std::filesystem::path city_sales_config() { return data_dir() / "city_sales" / "config.json"; }
inline std::filesystem::path city_sales_query() { return data_dir() / "city_sales" / "query.json"; }

struct CitySales {
  AppConfig config;
  LoadedDataset loaded;
  GroupBySpec spec;
  ResultSet result;
};

inline CitySales load_city_sales() {
  auto config = load_app_config(city_sales_config());
  auto loaded = load_dataset(config.dataset);
  auto spec = load_query(city_sales_query());
  auto result = execute_groupby(loaded.dataset, loaded.characters, spec);
  return {std::move(config), std::move(loaded), std::move(spec), std::move(result)};
}

// In-memory dataset with two flat dimensions "A" and "B" and one measure "V".
struct Grid {
  Dataset dataset;
  CharacterRegistry characters;
};

inline Grid make_grid(const std::vector<std::string>& a_ids, const std::vector<std::string>& b_ids) {
  Grid g;
  g.dataset.schema = Schema("grid", {{"A", FeatureKind::Identifier, std::nullopt},
                                     {"B", FeatureKind::Identifier, std::nullopt},
                                     {"V", FeatureKind::Numeric, std::nullopt}});
  g.dataset.measures = {{"V", "u", MeasureKind::Base, std::nullopt, std::nullopt}};
  g.dataset.dimensions = {{"A", "TypeA"}, {"B", "TypeB"}};
  g.characters.add_type({"TypeA", {}, false});
  g.characters.add_type({"TypeB", {}, false});
  for (const auto& id : a_ids) g.characters.add({"TypeA", id, id, {}, std::nullopt});
  for (const auto& id : b_ids) g.characters.add({"TypeB", id, id, {}, std::nullopt});
  return g;
}

inline void add_fact(Grid& g, const std::string& a, const std::string& b, double v) {
  g.dataset.facts.push_back({{Value(a), Value(b), Value(v)}});
}

// Random sparse grid with `rows` x `cols` characters; every cell receives
// 0..`max_facts` facts of small integer values.
inline Grid random_grid(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int max_facts = 2,
                        int max_value = 9) {
  std::vector<std::string> a, b;
  for (std::size_t i = 0; i < rows; ++i) a.push_back("a" + std::to_string(i));
  for (std::size_t j = 0; j < cols; ++j) b.push_back("b" + std::to_string(j));
  auto g = make_grid(a, b);
  std::uniform_int_distribution<int> count(0, max_facts);
  std::uniform_int_distribution<int> value(-max_value, max_value);
  for (const auto& x : a) {
    for (const auto& y : b) {
      const int n = count(rng);
      for (int k = 0; k < n; ++k) add_fact(g, x, y, value(rng));
    }
  }
  return g;
}

inline GroupBySpec sum_spec(std::vector<std::string> groupers = {"A", "B"}) {
  GroupBySpec spec;
  spec.groupers = std::move(groupers);
  spec.measure = "V";
  spec.aggregate = AggregateFunction::Sum;
  return spec;
}

}  // namespace hl::testing

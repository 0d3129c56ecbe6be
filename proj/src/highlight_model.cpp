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

#include "highlights/highlight_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "highlights/error.hpp"
#include "highlights/json_number.hpp"
#include "json.hpp"

namespace hl {

using ojson = nlohmann::ordered_json;

bool operator==(const HighlightCharacter& a, const HighlightCharacter& b) {
  return a.role == b.role && a.character.type == b.character.type && a.character.id == b.character.id &&
         a.character.description == b.character.description;
}

bool operator==(const ElementaryHighlight& a, const ElementaryHighlight& b) {
  return a.type == b.type && a.characters == b.characters && same_number(a.measure_value, b.measure_value) &&
         a.score_type == b.score_type && same_number(a.score, b.score);
}

bool operator==(const SupportiveExplanator& a, const SupportiveExplanator& b) {
  return a.role == b.role && a.feature == b.feature;
}

bool operator==(const MeasureBinding& a, const MeasureBinding& b) {
  return a.role == b.role && a.name == b.name && a.unit == b.unit;
}

bool operator==(const Provenance& a, const Provenance& b) {
  return a.id == b.id && a.query_digest == b.query_digest && a.dataset_digest == b.dataset_digest &&
         a.timestamp == b.timestamp;
}

bool operator==(const HolisticHighlight& a, const HolisticHighlight& b) {
  return a.type == b.type && a.algorithm == b.algorithm && a.model_type == b.model_type &&
         a.model == b.model && a.score_type == b.score_type && same_number(a.score, b.score) &&
         a.measure == b.measure && a.explanators == b.explanators && a.details == b.details &&
         a.provenance == b.provenance;
}

bool operator==(const HighlightReport& a, const HighlightReport& b) {
  return a.highlights == b.highlights && a.diagnostics == b.diagnostics;
}

void ScoreTypeRegistry::add(ScoreType type) {
  auto name = type.name;
  types_.insert_or_assign(std::move(name), std::move(type));
}

const ScoreType* ScoreTypeRegistry::find(std::string_view name) const {
  auto it = types_.find(name);
  return it == types_.end() ? nullptr : &it->second;
}

namespace {

// Matches `model` against `pattern`, where '#' consumes a positive integer.
bool matches(std::string_view pattern, std::string_view model) {
  std::size_t p = 0, m = 0;
  while (p < pattern.size()) {
    if (pattern[p] == '#') {
      std::size_t start = m;
      while (m < model.size() && model[m] >= '0' && model[m] <= '9') ++m;
      if (m == start || model[start] == '0') return false;
      ++p;
      continue;
    }
    if (m >= model.size() || pattern[p] != model[m]) return false;
    ++p;
    ++m;
  }
  return m == model.size();
}

}  // namespace

bool ModelType::contains(std::string_view model) const {
  for (const auto& entry : domain) {
    if (matches(entry, model)) return true;
  }
  return false;
}

void HighlightCatalog::add_model_type(ModelType type) {
  auto name = type.name;
  model_types_.insert_or_assign(std::move(name), std::move(type));
}

void HighlightCatalog::add_algorithm(AlgorithmInfo info) {
  auto it = algorithms_.find(info.name);
  if (it != algorithms_.end() && it->second.model_type != info.model_type) {
    throw Error(Errc::Internal, "algorithm '" + info.name + "' already determines model type '" +
                                    it->second.model_type + "'");
  }
  auto name = info.name;
  algorithms_.insert_or_assign(std::move(name), std::move(info));
}

void HighlightCatalog::set_detail_type(std::string highlight_type, std::string elementary_type) {
  detail_types_.insert_or_assign(std::move(highlight_type), std::move(elementary_type));
}

const ModelType* HighlightCatalog::model_type(std::string_view name) const {
  auto it = model_types_.find(name);
  return it == model_types_.end() ? nullptr : &it->second;
}

const AlgorithmInfo* HighlightCatalog::algorithm(std::string_view name) const {
  auto it = algorithms_.find(name);
  return it == algorithms_.end() ? nullptr : &it->second;
}

std::vector<std::string> HighlightCatalog::candidates(std::string_view highlight_type) const {
  std::vector<std::string> out;
  for (const auto& [name, info] : algorithms_) {
    if (info.highlight_type == highlight_type) out.push_back(name);
  }
  return out;
}

const std::string* HighlightCatalog::detail_type(std::string_view highlight_type) const {
  auto it = detail_types_.find(highlight_type);
  return it == detail_types_.end() ? nullptr : &it->second;
}

const HighlightCatalog& HighlightCatalog::standard() {
  static const HighlightCatalog catalog = [] {
    constexpr double inf = std::numeric_limits<double>::infinity();
    HighlightCatalog c;
    auto& s = c.scores();
    s.add({"p-value", 0.0, 1.0, Orientation::LowerIsStronger, ScoreFormat::PValue});
    s.add({"tau", -1.0, 1.0, Orientation::HigherIsStronger, ScoreFormat::Decimal});
    s.add({"rho", -1.0, 1.0, Orientation::HigherIsStronger, ScoreFormat::Decimal});
    s.add({"r", -1.0, 1.0, Orientation::HigherIsStronger, ScoreFormat::Decimal});
    s.add({"autocorrelation", -1.0, 1.0, Orientation::HigherIsStronger, ScoreFormat::Decimal});
    s.add({"peak-to-mean ratio", -inf, inf, Orientation::HigherIsStronger, ScoreFormat::Decimal});
    s.add({"rank", 1.0, inf, Orientation::LowerIsStronger, ScoreFormat::Integer});
    s.add({"ranked cells", 1.0, inf, Orientation::HigherIsStronger, ScoreFormat::Integer});
    s.add({"share of total", 0.0, 1.0, Orientation::HigherIsStronger, ScoreFormat::Percent});
    s.add({"percentage of dominated peers", 0.0, 1.0, Orientation::HigherIsStronger,
           ScoreFormat::Percent});

    c.add_model_type({"Distribution Shape", {"Normal", "Uniform", "Unclassified"}});
    c.add_model_type({"Correlation Strength",
                      {"Positively Significant", "Moderately Positively Significant", "Insignificant",
                       "Moderately Negatively Significant", "Negatively Significant"}});
    c.add_model_type({"Trend Direction", {"Increasing", "Decreasing", "No trend"}});
    c.add_model_type({"Periodicity", {"Seasonal(lag=#)", "Not seasonal"}});
    c.add_model_type({"Modality", {"Unimodal", "Bimodal", "Multimodal"}});
    c.add_model_type({"Top-k Selection", {"Top-k(k=#)"}});
    c.add_model_type({"Contribution Balance", {"Mega-contributor present", "Balanced contribution"}});
    c.add_model_type({"Domination Extent", {"Full domination", "Partial domination"}});

    c.add_algorithm({"Shapiro-Wilk", "Distribution", "Distribution Shape"});
    c.add_algorithm({"Kolmogorov-Smirnov", "Distribution", "Distribution Shape"});
    c.add_algorithm({"Kendall", "Correlation", "Correlation Strength"});
    c.add_algorithm({"Pearson", "Correlation", "Correlation Strength"});
    c.add_algorithm({"Spearman", "Correlation", "Correlation Strength"});
    c.add_algorithm({"Mann-Kendall", "Trend", "Trend Direction"});
    c.add_algorithm({"Lagged Autocorrelation", "Seasonality", "Periodicity"});
    c.add_algorithm({"Strict Local Maxima", "Modality", "Modality"});
    c.add_algorithm({"Descending Sort", "Top-k", "Top-k Selection"});
    c.add_algorithm({"Marginal Share", "Mega-contributor", "Contribution Balance"});
    c.add_algorithm({"Strict Peer Dominance", "Dominance", "Domination Extent"});

    c.set_detail_type("Modality", "Peak");
    c.set_detail_type("Top-k", "Top-k");
    c.set_detail_type("Mega-contributor", "Mega-contributor");
    c.set_detail_type("Dominance", "Peer dominator");
    return c;
  }();
  return catalog;
}

Role standard_role(std::string_view name) {
  static const std::map<std::string, std::string, std::less<>> texts = {
      {"main measure", "for"},
      {"ordering axis", "over"},
      {"peer axis", "among the members of"},
      {"slice axis", "for every member of"},
      {"breakdown axis", "broken down by"},
      {"coordinate axis", "ranked over"},
      {"paired measure", "against"},
      {"peak position", "peak at"},
      {"dominator", "dominates its peers"},
      {"mega-contributor", "contributes a large share"},
      {"coordinate", "located at"},
  };
  auto it = texts.find(name);
  return Role{std::string(name), it == texts.end() ? std::string(name) : it->second};
}

namespace {

void check_score(const ScoreTypeRegistry& scores, const std::string& score_type, double score,
                 const std::string& where, std::vector<HighlightViolation>& out) {
  const auto* st = scores.find(score_type);
  if (!st) {
    out.push_back({where, "unregistered score type '" + score_type + "'"});
    return;
  }
  if (!std::isfinite(score) || score < st->min || score > st->max) {
    out.push_back({where, "score out of range"});
  } else if (st->format == ScoreFormat::Integer && score != std::trunc(score)) {
    out.push_back({where, "score must be an integer"});
  }
}

}  // namespace

std::vector<HighlightViolation> validate_highlight(const HolisticHighlight& h,
                                                   const HighlightCatalog& catalog,
                                                   const CharacterRegistry* characters) {
  std::vector<HighlightViolation> out;
  const std::string where = h.provenance.id.empty() ? h.type : h.provenance.id;
  if (h.type.empty()) out.push_back({where, "missing highlight type"});
  const auto* algo = catalog.algorithm(h.algorithm);
  if (!algo) {
    out.push_back({where, "unknown algorithm '" + h.algorithm + "'"});
  } else {
    if (algo->highlight_type != h.type) {
      out.push_back({where, "algorithm '" + h.algorithm + "' is not a candidate for '" + h.type + "'"});
    }
    if (algo->model_type != h.model_type) {
      out.push_back({where, "model type '" + h.model_type + "' is not the one determined by '" +
                                h.algorithm + "'"});
    }
  }
  const auto* mt = catalog.model_type(h.model_type);
  if (!mt) {
    out.push_back({where, "unknown model type '" + h.model_type + "'"});
  } else if (!mt->contains(h.model)) {
    out.push_back({where, "model '" + h.model + "' outside model type domain"});
  }
  check_score(catalog.scores(), h.score_type, h.score, where, out);
  if (h.measure.role.name.empty() || h.measure.name.empty()) {
    out.push_back({where, "main measure role is incomplete"});
  }
  for (const auto& e : h.explanators) {
    if (e.role.name.empty() || e.feature.empty()) {
      out.push_back({where, "supportive explanator is incomplete"});
    }
  }

  const auto* expected_detail = catalog.detail_type(h.type);
  std::set<std::vector<std::pair<std::string, std::string>>> character_sets;
  for (std::size_t d = 0; d < h.details.size(); ++d) {
    const auto& e = h.details[d];
    const std::string at = where + ".details[" + std::to_string(d) + "]";
    if (!expected_detail) {
      out.push_back({at, "highlight type '" + h.type + "' takes no details"});
    } else if (e.type != *expected_detail) {
      out.push_back({at, "detail type '" + e.type + "' does not match '" + *expected_detail + "'"});
    }
    if (e.characters.empty()) out.push_back({at, "empty character set"});
    std::set<std::string> types;
    std::vector<std::pair<std::string, std::string>> key;
    for (const auto& hc : e.characters) {
      if (hc.role.name.empty()) out.push_back({at, "highlight character without role name"});
      if (!types.insert(hc.character.type).second) out.push_back({at, "duplicate character type"});
      if (characters && !characters->contains(hc.character.type, hc.character.id)) {
        out.push_back({at, "unresolvable character '" + hc.character.id + "'"});
      }
      key.emplace_back(hc.character.type, hc.character.id);
    }
    std::sort(key.begin(), key.end());
    if (!key.empty() && !character_sets.insert(key).second) {
      out.push_back({at, "duplicate character set within highlight"});
    }
    if (!std::isfinite(e.measure_value)) out.push_back({at, "non-finite measure value"});
    check_score(catalog.scores(), e.score_type, e.score, at, out);
  }
  return out;
}

namespace {

ojson role_fields(const Role& role, const char* text_key) {
  ojson j;
  j["role"] = role.name;
  j[text_key] = role.description;
  return j;
}

ojson to_json(const HolisticHighlight& h) {
  ojson j;
  j["kind"] = "holistic";
  j["type"] = h.type;
  j["algorithm"] = h.algorithm;
  j["modelType"] = h.model_type;
  j["model"] = h.model;
  j["scoreType"] = h.score_type;
  j["score"] = json_number(h.score);
  j["measure"] = ojson{{"role", h.measure.role.name}, {"name", h.measure.name}, {"unit", h.measure.unit}};
  j["supportiveExplanators"] = ojson::array();
  for (const auto& e : h.explanators) {
    auto ej = role_fields(e.role, "text");
    ej["feature"] = e.feature;
    j["supportiveExplanators"].push_back(std::move(ej));
  }
  j["details"] = ojson::array();
  for (const auto& d : h.details) {
    ojson dj;
    dj["kind"] = "elementary";
    dj["type"] = d.type;
    dj["characters"] = ojson::array();
    for (const auto& hc : d.characters) {
      auto cj = role_fields(hc.role, "text");
      cj["characterType"] = hc.character.type;
      cj["id"] = hc.character.id;
      cj["description"] = hc.character.description;
      dj["characters"].push_back(std::move(cj));
    }
    dj["measureValue"] = json_number(d.measure_value);
    dj["scoreType"] = d.score_type;
    dj["score"] = json_number(d.score);
    j["details"].push_back(std::move(dj));
  }
  ojson p;
  p["id"] = h.provenance.id;
  p["queryDigest"] = h.provenance.query_digest;
  p["datasetDigest"] = h.provenance.dataset_digest;
  if (h.provenance.timestamp) p["timestamp"] = *h.provenance.timestamp;
  j["provenance"] = std::move(p);
  return j;
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(Errc::InvalidHighlight, "malformed highlight document: " + what);
}

const ojson& field(const ojson& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing '") + key + "'");
  return j.at(key);
}

std::string text(const ojson& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) malformed(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

double number(const ojson& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) malformed(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

const ojson& array(const ojson& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_array()) malformed(std::string("'") + key + "' must be an array");
  return v;
}

}  // namespace

std::string serialize_highlights(const HighlightReport& report, const HighlightCatalog& catalog) {
  ojson doc;
  doc["highlights"] = ojson::array();
  for (const auto& h : report.highlights) {
    auto violations = validate_highlight(h, catalog);
    if (!violations.empty()) {
      throw Error(Errc::InvalidHighlight, "invalid highlight " + violations.front().where + ": " +
                                              violations.front().reason);
    }
    doc["highlights"].push_back(to_json(h));
  }
  doc["diagnostics"] = ojson::array();
  for (const auto& d : report.diagnostics) {
    doc["diagnostics"].push_back(
        ojson{{"detector", d.detector}, {"target", d.target}, {"message", d.message}});
  }
  return doc.dump();
}

HighlightReport deserialize_highlights(std::string_view json) {
  ojson doc;
  try {
    doc = ojson::parse(json);
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
  HighlightReport out;
  for (const auto& hj : array(doc, "highlights")) {
    if (text(hj, "kind") != "holistic") malformed("expected a holistic highlight");
    HolisticHighlight h;
    h.type = text(hj, "type");
    h.algorithm = text(hj, "algorithm");
    h.model_type = text(hj, "modelType");
    h.model = text(hj, "model");
    h.score_type = text(hj, "scoreType");
    h.score = number(hj, "score");
    const auto& mj = field(hj, "measure");
    h.measure = {standard_role(text(mj, "role")), text(mj, "name"), text(mj, "unit")};
    for (const auto& ej : array(hj, "supportiveExplanators")) {
      h.explanators.push_back({Role{text(ej, "role"), text(ej, "text")}, text(ej, "feature")});
    }
    for (const auto& dj : array(hj, "details")) {
      if (text(dj, "kind") != "elementary") malformed("expected an elementary highlight");
      ElementaryHighlight d;
      d.type = text(dj, "type");
      for (const auto& cj : array(dj, "characters")) {
        Character c;
        c.type = text(cj, "characterType");
        c.id = text(cj, "id");
        c.description = text(cj, "description");
        d.characters.push_back({Role{text(cj, "role"), text(cj, "text")}, std::move(c)});
      }
      d.measure_value = number(dj, "measureValue");
      d.score_type = text(dj, "scoreType");
      d.score = number(dj, "score");
      h.details.push_back(std::move(d));
    }
    const auto& pj = field(hj, "provenance");
    h.provenance.id = text(pj, "id");
    h.provenance.query_digest = text(pj, "queryDigest");
    h.provenance.dataset_digest = text(pj, "datasetDigest");
    if (pj.contains("timestamp")) h.provenance.timestamp = text(pj, "timestamp");
    out.highlights.push_back(std::move(h));
  }
  for (const auto& dj : array(doc, "diagnostics")) {
    out.diagnostics.push_back({text(dj, "detector"), text(dj, "target"), text(dj, "message")});
  }
  return out;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hl

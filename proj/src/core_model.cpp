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

#include "highlights/core_model.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <set>

#include "highlights/error.hpp"
#include "highlights/expression.hpp"

namespace hl {

ErrorCategory category_of(Errc code) noexcept {
  switch (code) {
    case Errc::UnknownCharacter:
    case Errc::UnknownCharacterType:
    case Errc::InvalidSchema:
    case Errc::FileNotFound:
    case Errc::MalformedCsv:
    case Errc::JoinMiss:
      return ErrorCategory::Data;
    case Errc::BadDerivation:
    case Errc::BadConfig:
      return ErrorCategory::Config;
    case Errc::UnknownFeature:
    case Errc::NonNumericMeasure:
    case Errc::UnsupportedGrouperArity:
    case Errc::NotADimension:
    case Errc::InvalidQuery:
    case Errc::MarginalsUndefined:
    case Errc::CharacterNotOnAxis:
      return ErrorCategory::Query;
    case Errc::LengthMismatch:
    case Errc::InsufficientN:
    case Errc::ConstantInput:
    case Errc::AllTiedInput:
    case Errc::NOutOfRange:
    case Errc::ZeroRange:
    case Errc::SparseSeries:
      return ErrorCategory::Kernel;
    case Errc::InvalidHighlight:
    case Errc::UnbindablePlaceholder:
      return ErrorCategory::Validation;
    case Errc::Internal:
      break;
  }
  return ErrorCategory::Internal;
}

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::UnknownCharacter: return "unknown-character";
    case Errc::UnknownCharacterType: return "unknown-character-type";
    case Errc::InvalidSchema: return "invalid-schema";
    case Errc::FileNotFound: return "file-not-found";
    case Errc::MalformedCsv: return "malformed-csv";
    case Errc::JoinMiss: return "join-miss";
    case Errc::BadDerivation: return "bad-derivation";
    case Errc::BadConfig: return "bad-config";
    case Errc::UnknownFeature: return "unknown-feature";
    case Errc::NonNumericMeasure: return "non-numeric-measure";
    case Errc::UnsupportedGrouperArity: return "unsupported-grouper-arity";
    case Errc::NotADimension: return "not-a-dimension";
    case Errc::InvalidQuery: return "invalid-query";
    case Errc::MarginalsUndefined: return "marginals-undefined-for-aggregate";
    case Errc::CharacterNotOnAxis: return "character-not-on-axis";
    case Errc::LengthMismatch: return "length-mismatch";
    case Errc::InsufficientN: return "insufficient-n";
    case Errc::ConstantInput: return "constant-input";
    case Errc::AllTiedInput: return "all-tied-input";
    case Errc::NOutOfRange: return "n-out-of-range";
    case Errc::ZeroRange: return "zero-range";
    case Errc::SparseSeries: return "sparse-series";
    case Errc::InvalidHighlight: return "invalid-highlight";
    case Errc::UnbindablePlaceholder: return "unbindable-placeholder";
    case Errc::Internal: return "internal";
  }
  return "internal";
}

std::string_view to_string(FeatureKind kind) noexcept {
  switch (kind) {
    case FeatureKind::Identifier: return "Identifier";
    case FeatureKind::Descriptor: return "Descriptor";
    case FeatureKind::Numeric: return "Numeric";
    case FeatureKind::DateTime: return "DateTime";
  }
  return "Descriptor";
}

Schema::Schema(std::string name, std::vector<Feature> features)
    : name_(std::move(name)), features_(std::move(features)) {
  if (features_.empty()) {
    throw Error(Errc::InvalidSchema, "schema '" + name_ + "' has no features");
  }
  std::set<std::string_view> seen;
  for (const auto& f : features_) {
    if (f.name.empty()) {
      throw Error(Errc::InvalidSchema, "schema '" + name_ + "' has an unnamed feature");
    }
    if (!seen.insert(f.name).second) {
      throw Error(Errc::InvalidSchema,
                  "schema '" + name_ + "' repeats feature '" + f.name + "'");
    }
  }
}

std::optional<std::size_t> Schema::index_of(std::string_view feature) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].name == feature) return i;
  }
  return std::nullopt;
}

const Feature* Schema::find(std::string_view feature) const {
  auto idx = index_of(feature);
  return idx ? &features_[*idx] : nullptr;
}

namespace {

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  auto res = std::from_chars(s.data() + pos, s.data() + pos + len, out);
  return res.ec == std::errc();
}

}  // namespace

std::optional<DateTime> parse_iso8601(std::string_view text) {
  int y = 0, mo = 0, d = 1, h = 0, mi = 0, sec = 0;
  if (!read_int(text, 0, 4, y) || text.size() < 7 || text[4] != '-' ||
      !read_int(text, 5, 2, mo)) {
    return std::nullopt;
  }
  std::size_t pos = 7;
  if (pos < text.size()) {
    if (text[pos] != '-' || !read_int(text, pos + 1, 2, d)) return std::nullopt;
    pos += 3;
    if (pos < text.size()) {
      if ((text[pos] != 'T' && text[pos] != ' ') || !read_int(text, pos + 1, 2, h) ||
          pos + 3 >= text.size() || text[pos + 3] != ':' ||
          !read_int(text, pos + 4, 2, mi)) {
        return std::nullopt;
      }
      pos += 6;
      if (pos < text.size() && text[pos] == ':') {
        if (!read_int(text, pos + 1, 2, sec)) return std::nullopt;
        pos += 3;
      }
      if (pos < text.size() && text[pos] == 'Z') ++pos;
      if (pos != text.size()) return std::nullopt;
    }
  }
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                     day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) return std::nullopt;
  auto days = sys_days{ymd}.time_since_epoch().count();
  std::int64_t epoch = static_cast<std::int64_t>(days) * 86400 + h * 3600 + mi * 60 + sec;
  return DateTime{std::string(text), epoch};
}

bool conforms(const Value& v, FeatureKind kind) noexcept {
  switch (kind) {
    case FeatureKind::Numeric: return std::holds_alternative<double>(v);
    case FeatureKind::DateTime: return std::holds_alternative<DateTime>(v);
    case FeatureKind::Identifier:
    case FeatureKind::Descriptor: return std::holds_alternative<std::string>(v);
  }
  return false;
}

std::string value_to_string(const Value& v) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double d) const {
      char buf[32];
      auto res = std::to_chars(buf, buf + sizeof buf, d);
      return std::string(buf, res.ptr);
    }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const DateTime& t) const { return t.iso; }
  };
  return std::visit(Visitor{}, v);
}

std::string_view to_string(AggregateFunction fn) noexcept {
  switch (fn) {
    case AggregateFunction::Sum: return "SUM";
    case AggregateFunction::Avg: return "AVG";
    case AggregateFunction::Count: return "COUNT";
    case AggregateFunction::Min: return "MIN";
    case AggregateFunction::Max: return "MAX";
  }
  return "SUM";
}

std::optional<AggregateFunction> parse_aggregate(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "SUM") return AggregateFunction::Sum;
  if (upper == "AVG") return AggregateFunction::Avg;
  if (upper == "COUNT") return AggregateFunction::Count;
  if (upper == "MIN") return AggregateFunction::Min;
  if (upper == "MAX") return AggregateFunction::Max;
  return std::nullopt;
}

std::vector<std::string> check_measure_types(const std::vector<MeasureType>& measures) {
  std::vector<std::string> problems;
  std::set<std::string_view> names;
  for (const auto& m : measures) names.insert(m.name);
  for (const auto& m : measures) {
    if (m.kind == MeasureKind::Aggregate && !m.aggregate) {
      problems.push_back("aggregate measure '" + m.name + "' has no aggregate function");
    }
    if (m.kind != MeasureKind::Derived) continue;
    if (!m.derivation) {
      problems.push_back("derived measure '" + m.name + "' has no expression");
      continue;
    }
    try {
      for (const auto& ref : Expression::parse(*m.derivation).references()) {
        if (!names.count(ref) || ref == m.name) {
          problems.push_back("derived measure '" + m.name + "' references unknown measure '" +
                             ref + "'");
        }
      }
    } catch (const Error& e) {
      problems.push_back(e.what());
    }
  }
  return problems;
}

std::vector<Feature> CharacterType::all_features() const {
  std::vector<Feature> out{{"Id", FeatureKind::Identifier, std::nullopt},
                           {"Description", FeatureKind::Descriptor, std::nullopt}};
  out.insert(out.end(), properties.begin(), properties.end());
  return out;
}

void CharacterRegistry::add_type(CharacterType type) {
  auto name = type.name;
  types_.try_emplace(std::move(name), Entry{std::move(type), {}});
}

const Character& CharacterRegistry::add(Character character) {
  auto it = types_.find(character.type);
  if (it == types_.end()) {
    throw Error(Errc::UnknownCharacterType,
                "unknown character type '" + character.type + "'");
  }
  auto id = character.id;
  auto [pos, inserted] = it->second.members.try_emplace(std::move(id), std::move(character));
  if (!inserted) {
    throw Error(Errc::InvalidSchema, "duplicate character id '" + pos->first +
                                         "' in type '" + it->first + "'");
  }
  ++count_;
  return pos->second;
}

bool CharacterRegistry::contains(std::string_view type, std::string_view id) const {
  return find(type, id) != nullptr;
}

const CharacterType* CharacterRegistry::find_type(std::string_view type) const {
  auto it = types_.find(type);
  return it == types_.end() ? nullptr : &it->second.type;
}

const Character* CharacterRegistry::find(std::string_view type, std::string_view id) const {
  auto it = types_.find(type);
  if (it == types_.end()) return nullptr;
  auto m = it->second.members.find(id);
  return m == it->second.members.end() ? nullptr : &m->second;
}

std::vector<std::string> CharacterRegistry::type_names() const {
  std::vector<std::string> out;
  for (const auto& [name, entry] : types_) out.push_back(name);
  return out;
}

std::size_t CharacterRegistry::size(std::string_view type) const {
  auto it = types_.find(type);
  return it == types_.end() ? 0 : it->second.members.size();
}

const Character& resolve_character(std::string_view character_type, std::string_view id,
                                   const CharacterRegistry& registry) {
  if (!registry.find_type(character_type)) {
    throw Error(Errc::UnknownCharacterType,
                "unknown character type '" + std::string(character_type) + "'");
  }
  const Character* c = registry.find(character_type, id);
  if (!c) {
    throw Error(Errc::UnknownCharacter, "unknown character '" + std::string(id) +
                                            "' of type '" + std::string(character_type) + "'");
  }
  return *c;
}

const MeasureType* Dataset::find_measure(std::string_view name) const {
  for (const auto& m : measures) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

const std::string* Dataset::character_type_of(std::string_view feature) const {
  auto it = dimensions.find(feature);
  return it == dimensions.end() ? nullptr : &it->second;
}

const Value& Dataset::value(std::size_t fact, std::string_view feature) const {
  auto idx = schema.index_of(feature);
  if (!idx) throw Error(Errc::UnknownFeature, "unknown feature '" + std::string(feature) + "'");
  return facts.at(fact).values.at(*idx);
}

std::vector<DatasetViolation> validate_dataset(const Dataset& dataset) {
  std::vector<DatasetViolation> out;
  const auto& features = dataset.schema.features();
  for (std::size_t i = 0; i < dataset.facts.size(); ++i) {
    const auto& fact = dataset.facts[i];
    if (fact.values.size() != features.size()) {
      out.push_back({i, "", "fact has " + std::to_string(fact.values.size()) +
                                " values, schema has " + std::to_string(features.size())});
      continue;
    }
    for (std::size_t f = 0; f < features.size(); ++f) {
      const auto& v = fact.values[f];
      if (is_null(v)) continue;
      const auto& feature = features[f];
      if (!conforms(v, feature.kind)) {
        out.push_back({i, feature.name,
                       "value does not conform to kind " + std::string(to_string(feature.kind))});
        continue;
      }
      if (const double* d = std::get_if<double>(&v)) {
        if (!std::isfinite(*d)) {
          out.push_back({i, feature.name, "non-finite numeric value"});
        } else if (feature.range && !feature.range->contains(*d)) {
          out.push_back({i, feature.name, "value outside declared range"});
        }
      }
    }
  }
  return out;
}

}  // namespace hl

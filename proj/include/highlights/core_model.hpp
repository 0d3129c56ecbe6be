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

// Back-end data model: schemata, features, facts, measures and characters.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hl {

enum class FeatureKind { Identifier, Descriptor, Numeric, DateTime };

std::string_view to_string(FeatureKind kind) noexcept;

struct NumericRange {
  double min = -std::numeric_limits<double>::infinity();
  double max = std::numeric_limits<double>::infinity();

  bool contains(double v) const noexcept { return v >= min && v <= max; }
};

struct Feature {
  std::string name;
  FeatureKind kind = FeatureKind::Descriptor;
  // Only meaningful for Numeric features; text and timestamp domains are
  // implied by the kind.
  std::optional<NumericRange> range;
};

class Schema {
 public:
  Schema() = default;
  // Throws Error(InvalidSchema) on an empty feature list or duplicate names.
  Schema(std::string name, std::vector<Feature> features);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Feature>& features() const noexcept { return features_; }
  std::size_t size() const noexcept { return features_.size(); }

  std::optional<std::size_t> index_of(std::string_view feature) const;
  const Feature* find(std::string_view feature) const;

 private:
  std::string name_;
  std::vector<Feature> features_;
};

// ISO-8601 timestamp kept verbatim together with its parsed epoch value.
struct DateTime {
  std::string iso;
  std::int64_t epoch_seconds = 0;

  friend bool operator==(const DateTime&, const DateTime&) = default;
};

// Accepts YYYY-MM, YYYY-MM-DD, YYYY-MM-DDTHH:MM[:SS][Z] (also with a space
// separator). Returns nullopt for anything else.
std::optional<DateTime> parse_iso8601(std::string_view text);

using Value = std::variant<std::monostate, double, std::string, DateTime>;

inline bool is_null(const Value& v) noexcept {
  return std::holds_alternative<std::monostate>(v);
}

// Whether a non-null value has the representation required by `kind`.
bool conforms(const Value& v, FeatureKind kind) noexcept;

std::string value_to_string(const Value& v);

// One observation. Values are positional, aligned with the owning schema.
struct Fact {
  std::vector<Value> values;
};

enum class MeasureKind { Base, Aggregate, Derived };
enum class AggregateFunction { Sum, Avg, Count, Min, Max };

std::string_view to_string(AggregateFunction fn) noexcept;
std::optional<AggregateFunction> parse_aggregate(std::string_view name);

struct MeasureType {
  std::string name;
  std::string unit;
  MeasureKind kind = MeasureKind::Base;
  std::optional<AggregateFunction> aggregate;
  std::optional<std::string> derivation;
};

// Empty when every measure type satisfies the kind invariants. Derivation
// expressions may only reference other measures of the same list.
std::vector<std::string> check_measure_types(
    const std::vector<MeasureType>& measures);

struct MeasureValue {
  std::string measure;
  double value = 0.0;
};

struct CharacterType {
  std::string name;
  // Characteristic properties beyond the implicit Id and Description.
  std::vector<Feature> properties;
  // Time-like types order their characters by epoch rather than text.
  bool temporal = false;

  // Id, Description, then the characteristic properties.
  std::vector<Feature> all_features() const;
};

struct Character {
  std::string type;
  std::string id;
  std::string description;
  std::map<std::string, Value> properties;
  std::optional<std::int64_t> epoch_seconds;

  friend bool operator==(const Character& a, const Character& b) {
    return a.type == b.type && a.id == b.id;
  }
};

struct Role {
  std::string name;
  std::string description;

  friend bool operator==(const Role&, const Role&) = default;
};

class CharacterRegistry {
 public:
  // Re-registering an existing type name is a no-op.
  void add_type(CharacterType type);
  // Throws Error(UnknownCharacterType) when the type is unregistered and
  // Error(InvalidSchema) on a duplicate id.
  const Character& add(Character character);

  bool contains(std::string_view type, std::string_view id) const;
  const CharacterType* find_type(std::string_view type) const;
  const Character* find(std::string_view type, std::string_view id) const;

  std::vector<std::string> type_names() const;
  std::size_t size(std::string_view type) const;
  std::size_t total_size() const noexcept { return count_; }

 private:
  struct Entry {
    CharacterType type;
    std::map<std::string, Character, std::less<>> members;
  };
  std::map<std::string, Entry, std::less<>> types_;
  std::size_t count_ = 0;
};

const Character& resolve_character(std::string_view character_type,
                                   std::string_view id,
                                   const CharacterRegistry& registry);

struct Dataset {
  Schema schema;
  std::vector<Fact> facts;
  // One entry per Numeric feature that acts as a measure.
  std::vector<MeasureType> measures;
  // Dimension feature name -> character type name.
  std::map<std::string, std::string, std::less<>> dimensions;

  const MeasureType* find_measure(std::string_view name) const;
  const std::string* character_type_of(std::string_view feature) const;
  // Throws Error(UnknownFeature).
  const Value& value(std::size_t fact, std::string_view feature) const;
};

struct DatasetViolation {
  std::size_t fact = 0;
  std::string feature;
  std::string reason;
};

std::vector<DatasetViolation> validate_dataset(const Dataset& dataset);

}  // namespace hl

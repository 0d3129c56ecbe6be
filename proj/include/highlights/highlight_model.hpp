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

// Front-end model: holistic highlights, their elementary details, and the
// catalog of highlight types, algorithms, model types and score types that
// constrains them.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "highlights/core_model.hpp"

namespace hl {

struct HighlightCharacter {
  Role role;
  Character character;
};

struct ElementaryHighlight {
  std::string type;
  std::vector<HighlightCharacter> characters;
  // In the unit of the parent's main measure.
  double measure_value = 0.0;
  std::string score_type;
  double score = 0.0;
};

struct SupportiveExplanator {
  Role role;
  std::string feature;
};

struct MeasureBinding {
  Role role;
  std::string name;
  std::string unit;
};

struct Provenance {
  std::string id;
  std::string query_digest;
  std::string dataset_digest;
  std::optional<std::string> timestamp;
};

struct HolisticHighlight {
  std::string type;
  std::string algorithm;
  std::string model_type;
  std::string model;
  std::string score_type;
  double score = 0.0;
  MeasureBinding measure;
  std::vector<SupportiveExplanator> explanators;
  std::vector<ElementaryHighlight> details;
  Provenance provenance;
};

struct Diagnostic {
  std::string detector;
  std::string target;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct HighlightReport {
  std::vector<HolisticHighlight> highlights;
  std::vector<Diagnostic> diagnostics;
};

// Structural equality; numbers compare equal when they agree to the 12
// significant digits kept by serialization. Character properties and epochs
// are not part of the serialized form and are ignored.
bool operator==(const HighlightCharacter& a, const HighlightCharacter& b);
bool operator==(const ElementaryHighlight& a, const ElementaryHighlight& b);
bool operator==(const SupportiveExplanator& a, const SupportiveExplanator& b);
bool operator==(const MeasureBinding& a, const MeasureBinding& b);
bool operator==(const Provenance& a, const Provenance& b);
bool operator==(const HolisticHighlight& a, const HolisticHighlight& b);
bool operator==(const HighlightReport& a, const HighlightReport& b);

enum class Orientation { HigherIsStronger, LowerIsStronger };
enum class ScoreFormat { Decimal, PValue, Percent, Integer };

struct ScoreType {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  Orientation orientation = Orientation::HigherIsStronger;
  ScoreFormat format = ScoreFormat::Decimal;
};

class ScoreTypeRegistry {
 public:
  void add(ScoreType type);
  const ScoreType* find(std::string_view name) const;
  const std::map<std::string, ScoreType, std::less<>>& all() const noexcept { return types_; }

 private:
  std::map<std::string, ScoreType, std::less<>> types_;
};

struct ModelType {
  std::string name;
  // Allowed models. A '#' inside an entry stands for a positive integer,
  // e.g. "Seasonal(lag=#)".
  std::vector<std::string> domain;

  bool contains(std::string_view model) const;
};

struct AlgorithmInfo {
  std::string name;
  std::string highlight_type;
  std::string model_type;
};

class HighlightCatalog {
 public:
  // The highlight types produced by the built-in detectors.
  static const HighlightCatalog& standard();

  void add_model_type(ModelType type);
  // Throws Error(Internal) if the algorithm is already registered with a
  // different model type.
  void add_algorithm(AlgorithmInfo info);
  void set_detail_type(std::string highlight_type, std::string elementary_type);

  ScoreTypeRegistry& scores() noexcept { return scores_; }
  const ScoreTypeRegistry& scores() const noexcept { return scores_; }
  const ModelType* model_type(std::string_view name) const;
  const AlgorithmInfo* algorithm(std::string_view name) const;
  std::vector<std::string> candidates(std::string_view highlight_type) const;
  const std::string* detail_type(std::string_view highlight_type) const;
  const std::map<std::string, AlgorithmInfo, std::less<>>& algorithms() const noexcept {
    return algorithms_;
  }

 private:
  ScoreTypeRegistry scores_;
  std::map<std::string, ModelType, std::less<>> model_types_;
  std::map<std::string, AlgorithmInfo, std::less<>> algorithms_;
  std::map<std::string, std::string, std::less<>> detail_types_;
};

// Roles used by the built-in detectors. Unknown names map to a role whose
// description equals its name.
Role standard_role(std::string_view name);

struct HighlightViolation {
  std::string where;
  std::string reason;
};

// Empty iff the highlight and all its details satisfy the catalog
// constraints. Characters are checked against `characters` when given.
std::vector<HighlightViolation> validate_highlight(const HolisticHighlight& h,
                                                   const HighlightCatalog& catalog,
                                                   const CharacterRegistry* characters = nullptr);

// Deterministic JSON; throws Error(InvalidHighlight) if any highlight fails
// validation.
std::string serialize_highlights(const HighlightReport& report,
                                 const HighlightCatalog& catalog = HighlightCatalog::standard());
// Throws Error(InvalidHighlight) on malformed documents.
HighlightReport deserialize_highlights(std::string_view json);

// FNV-1a 64-bit digest rendered as 16 hex digits.
std::string digest(std::string_view bytes);

}  // namespace hl

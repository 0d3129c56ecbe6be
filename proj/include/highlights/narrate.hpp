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

// Text rendering of highlights: one sentence per highlight from a pattern,
// and a summary paragraph grouped around the characters mentioned most.

#include <string>
#include <string_view>
#include <vector>

#include "highlights/core_model.hpp"
#include "highlights/highlight_model.hpp"

namespace hl {

struct NarrativeTemplate {
  std::string holistic =
      "The {HighlightType} for {MainMeasure}, tested via {Algorithm}{SupportiveRoles*}, fits under "
      "the {Model} model with {ScoreType} and value {ScoreValue}.";
  std::string elementary =
      "{CharacterSet} with {Measure} = {MeasureValue} serves as {HighlightType} with {ScoreType} = "
      "{ScoreValue}.";

  // Throws Error(UnbindablePlaceholder) naming the first unknown token.
  void validate() const;
};

// Score text per the score type's format; unknown score types print as
// decimals.
std::string format_score(double value, std::string_view score_type,
                         const ScoreTypeRegistry& scores = HighlightCatalog::standard().scores());

std::string render_holistic(const HolisticHighlight& h, const NarrativeTemplate& t = {});
std::string render_elementary(const ElementaryHighlight& e, const MeasureBinding& measure,
                              const NarrativeTemplate& t = {});

enum class TextFormat { Text, Markdown };

struct SummaryOptions {
  NarrativeTemplate templates;
  // Group order. Entries are "geography", "time", or character type names.
  std::vector<std::string> type_order = {"geography", "time"};
  TextFormat format = TextFormat::Text;
};

struct SummarySentence {
  std::string text;
  std::string highlight_id;
};

struct Summary {
  std::vector<SummarySentence> sentences;

  // Sentences joined by single spaces.
  std::string text() const;
};

// Characters named in two or more details, most mentioned first.
std::vector<Character> protagonists(const std::vector<HolisticHighlight>& highlights);

Summary compose_summary(const std::vector<HolisticHighlight>& highlights,
                        const CharacterRegistry& characters, const SummaryOptions& options = {});

}  // namespace hl

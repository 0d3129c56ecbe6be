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

#include "highlights/narrate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "highlights/error.hpp"
#include "highlights/json_number.hpp"

namespace hl {

namespace {

using Bindings = std::map<std::string, std::string, std::less<>>;

const std::set<std::string, std::less<>> kHolisticTokens = {
    "HighlightType", "MainMeasure", "Algorithm", "SupportiveRoles*", "Model", "ScoreType", "ScoreValue"};
const std::set<std::string, std::less<>> kElementaryTokens = {
    "CharacterSet", "Measure", "MeasureValue", "HighlightType", "ScoreType", "ScoreValue"};

// Calls `on_token` for each {Name}; throws on unterminated braces.
template <typename Text, typename Token>
void scan(std::string_view pattern, Text on_text, Token on_token) {
  std::size_t pos = 0;
  while (pos < pattern.size()) {
    const auto open = pattern.find('{', pos);
    const auto close_stray = pattern.find('}', pos);
    if (close_stray < open) {
      throw Error(Errc::UnbindablePlaceholder, "unbalanced '}' in pattern");
    }
    if (open == std::string_view::npos) {
      on_text(pattern.substr(pos));
      return;
    }
    on_text(pattern.substr(pos, open - pos));
    const auto close = pattern.find('}', open);
    if (close == std::string_view::npos) {
      throw Error(Errc::UnbindablePlaceholder, "unterminated placeholder in pattern");
    }
    on_token(pattern.substr(open + 1, close - open - 1));
    pos = close + 1;
  }
}

void check_tokens(std::string_view pattern, const std::set<std::string, std::less<>>& allowed) {
  scan(
      pattern, [](std::string_view) {},
      [&](std::string_view token) {
        if (!allowed.count(token)) {
          throw Error(Errc::UnbindablePlaceholder, "unknown placeholder {" + std::string(token) + "}");
        }
      });
}

std::string fill(std::string_view pattern, const Bindings& bindings) {
  std::string out;
  scan(
      pattern, [&](std::string_view text) { out += text; },
      [&](std::string_view token) {
        auto it = bindings.find(token);
        if (it == bindings.end()) {
          throw Error(Errc::UnbindablePlaceholder, "unknown placeholder {" + std::string(token) + "}");
        }
        out += it->second;
      });
  return out;
}

std::string general(double v, int precision) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
  return std::string(buf, r.ptr);
}

// At least `digits` significant digits, never scientific for whole parts.
std::string significant(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return format_number(v);
  const int whole = static_cast<int>(std::floor(std::log10(std::fabs(v)))) + 1;
  return general(v, std::max(digits, whole));
}

std::string scientific(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 1);
  std::string s(buf, r.ptr);
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  std::string exponent = s.substr(e + 1);
  if (mantissa.size() > 2 && mantissa.compare(mantissa.size() - 2, 2, ".0") == 0) {
    mantissa.resize(mantissa.size() - 2);
  }
  std::string sign;
  if (!exponent.empty() && (exponent[0] == '-' || exponent[0] == '+')) {
    if (exponent[0] == '-') sign = "-";
    exponent.erase(0, 1);
  }
  exponent.erase(0, std::min(exponent.find_first_not_of('0'), exponent.size() - 1));
  return mantissa + "e" + sign + exponent;
}

std::string character_set(const std::vector<HighlightCharacter>& characters) {
  std::string out = "(";
  for (std::size_t i = 0; i < characters.size(); ++i) {
    if (i) out += ", ";
    out += characters[i].character.description;
  }
  return out + ")";
}

const SupportiveExplanator* explanator_for(const HolisticHighlight& h, std::string_view role) {
  for (const auto& e : h.explanators) {
    if (e.role.name == role) return &e;
  }
  return nullptr;
}

std::string explanator_feature(const HolisticHighlight& h, std::string_view role) {
  const auto* e = explanator_for(h, role);
  if (e) return e->feature;
  return h.explanators.empty() ? std::string() : h.explanators.front().feature;
}

bool is_negative(const HolisticHighlight& h) {
  return h.model == "No trend" || h.model == "Not seasonal" || h.model == "Balanced contribution" ||
         h.model == "Insignificant" || h.model == "Unclassified";
}

std::string negative_sentence(const HolisticHighlight& h) {
  const auto& m = h.measure.name;
  if (h.model == "No trend") return "No trend was detected in " + m + " over " + explanator_feature(h, "ordering axis") + ".";
  if (h.model == "Not seasonal") {
    return "No seasonality was detected in " + m + " over " + explanator_feature(h, "ordering axis") + ".";
  }
  if (h.model == "Balanced contribution") {
    return "No mega-contributor was found for " + m + " across " + explanator_feature(h, "breakdown axis") + ".";
  }
  if (h.model == "Insignificant") {
    return "No significant correlation was found between " + m + " and " +
           explanator_feature(h, "paired measure") + ".";
  }
  return "The distribution of " + m + " fits none of the tested models.";
}

std::string emphasize(const std::string& name, TextFormat format) {
  return format == TextFormat::Markdown ? "**" + name + "**" : name;
}

enum class Category { Geography, Time, Other };

bool is_geographic(std::string_view type) {
  static const char* const kWords[] = {"city",   "country",   "region", "state", "province",
                                       "county", "location",  "place",  "area",  "territory",
                                       "island", "continent", "district", "geo"};
  std::string lower(type);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return std::any_of(std::begin(kWords), std::end(kWords),
                     [&](const char* w) { return lower.find(w) != std::string::npos; });
}

Category category_of(const Character& c, const CharacterRegistry& registry) {
  const auto* type = registry.find_type(c.type);
  if ((type && type->temporal) || c.epoch_seconds) return Category::Time;
  if (is_geographic(c.type)) return Category::Geography;
  return Category::Other;
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

// Body of a sentence about `who` within highlight `h`; starts lower case
// unless it starts with a name.
std::string protagonist_clause(const HolisticHighlight& h, const ElementaryHighlight& detail,
                               const Character& who, const SummaryOptions& options) {
  const auto name = emphasize(who.description, options.format);
  const auto& m = h.measure.name;
  if (h.type == "Dominance") {
    const auto peers = explanator_feature(h, "peer axis");
    const auto slices = explanator_feature(h, "slice axis");
    if (detail.score >= 1.0) return name + " dominates all other members of " + peers + ", in every " + slices;
    return name + " dominates " + format_score(detail.score, detail.score_type) +
           " of the other members of " + peers + " across " + slices;
  }
  if (h.type == "Mega-contributor") {
    return name + " is a mega-contributor to total " + m + ", by contributing " +
           format_score(detail.score, detail.score_type) + " of all " + m;
  }
  if (h.type == "Modality") {
    return "the progression of " + m + " over " + explanator_feature(h, "ordering axis") +
           " shows a peak in " + name;
  }
  if (h.type == "Top-k") {
    std::string cells;
    for (std::size_t i = 0; i < detail.characters.size(); ++i) {
      if (i) cells += ", ";
      cells += emphasize(detail.characters[i].character.description, options.format);
    }
    return cells + " ranks " + format_score(detail.score, detail.score_type) + " in " + m + " with " +
           format_number(detail.measure_value);
  }
  auto text = render_elementary(detail, h.measure, options.templates);
  if (!text.empty() && text.back() == '.') text.pop_back();
  return text;
}

}  // namespace

void NarrativeTemplate::validate() const {
  check_tokens(holistic, kHolisticTokens);
  check_tokens(elementary, kElementaryTokens);
}

std::string format_score(double value, std::string_view score_type, const ScoreTypeRegistry& scores) {
  const auto* type = scores.find(score_type);
  const auto format = type ? type->format : ScoreFormat::Decimal;
  switch (format) {
    case ScoreFormat::PValue:
      if (value > 0.0 && value < 1e-3) return scientific(value);
      return significant(value, 4);
    case ScoreFormat::Percent: return significant(value * 100.0, 3) + "%";
    case ScoreFormat::Integer: return std::to_string(std::llround(value));
    case ScoreFormat::Decimal: break;
  }
  return significant(value, 4);
}

std::string render_holistic(const HolisticHighlight& h, const NarrativeTemplate& t) {
  std::string roles;
  for (std::size_t i = 0; i < h.explanators.size(); ++i) {
    roles += i ? "; " : ", ";
    roles += h.explanators[i].role.description + " " + h.explanators[i].feature;
  }
  return fill(t.holistic, {{"HighlightType", h.type},
                           {"MainMeasure", h.measure.name},
                           {"Algorithm", h.algorithm},
                           {"SupportiveRoles*", roles},
                           {"Model", h.model},
                           {"ScoreType", h.score_type},
                           {"ScoreValue", format_score(h.score, h.score_type)}});
}

std::string render_elementary(const ElementaryHighlight& e, const MeasureBinding& measure,
                              const NarrativeTemplate& t) {
  return fill(t.elementary, {{"CharacterSet", character_set(e.characters)},
                             {"Measure", measure.name},
                             {"MeasureValue", format_number(e.measure_value)},
                             {"HighlightType", e.type},
                             {"ScoreType", e.score_type},
                             {"ScoreValue", format_score(e.score, e.score_type)}});
}

std::string Summary::text() const {
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out += ' ';
    out += s.text;
  }
  return out;
}

namespace {

struct Mention {
  Character character;
  std::size_t count = 0;
  std::size_t first_seen = 0;
};

std::vector<Mention> count_mentions(const std::vector<HolisticHighlight>& highlights) {
  std::vector<Mention> mentions;
  std::size_t order = 0;
  for (const auto& h : highlights) {
    for (const auto& d : h.details) {
      for (const auto& c : d.characters) {
        auto it = std::find_if(mentions.begin(), mentions.end(),
                               [&](const Mention& m) { return m.character == c.character; });
        if (it == mentions.end()) {
          mentions.push_back({c.character, 1, order++});
        } else {
          ++it->count;
        }
      }
    }
  }
  std::erase_if(mentions, [](const Mention& m) { return m.count < 2; });
  return mentions;
}

}  // namespace

std::vector<Character> protagonists(const std::vector<HolisticHighlight>& highlights) {
  auto mentions = count_mentions(highlights);
  std::stable_sort(mentions.begin(), mentions.end(),
                   [](const Mention& a, const Mention& b) { return a.count > b.count; });
  std::vector<Character> out;
  for (auto& m : mentions) out.push_back(std::move(m.character));
  return out;
}

Summary compose_summary(const std::vector<HolisticHighlight>& highlights,
                        const CharacterRegistry& characters, const SummaryOptions& options) {
  Summary summary;
  if (highlights.empty()) {
    summary.sentences.push_back({"No noteworthy highlights were detected.", {}});
    return summary;
  }

  struct Group {
    Mention mention;
    std::size_t rank;
    std::string label;
  };
  std::vector<Group> groups;
  for (auto& m : count_mentions(highlights)) {
    const auto category = category_of(m.character, characters);
    const char* category_name = category == Category::Geography ? "geography"
                                : category == Category::Time    ? "time"
                                                                : "";
    std::size_t rank = options.type_order.size();
    std::string label = m.character.type;
    for (std::size_t i = 0; i < options.type_order.size(); ++i) {
      const auto& entry = options.type_order[i];
      if (entry == m.character.type) {
        rank = i;
        break;
      }
      if (entry == category_name) {
        rank = i;
        label = category_name;
        break;
      }
    }
    if (rank == options.type_order.size() && *category_name) label = category_name;
    groups.push_back({std::move(m), rank, std::move(label)});
  }
  std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.label != b.label) return a.label < b.label;
    if (a.mention.count != b.mention.count) return a.mention.count > b.mention.count;
    return a.mention.first_seen < b.mention.first_seen;
  });

  std::vector<bool> used(highlights.size(), false);
  std::string previous_label;
  bool first_group = true;
  for (const auto& g : groups) {
    std::size_t said = 0;
    for (std::size_t i = 0; i < highlights.size(); ++i) {
      if (used[i] || is_negative(highlights[i])) continue;
      const auto& h = highlights[i];
      const ElementaryHighlight* detail = nullptr;
      for (const auto& d : h.details) {
        for (const auto& c : d.characters) {
          if (c.character == g.mention.character) detail = &d;
        }
        if (detail) break;
      }
      if (!detail) continue;
      used[i] = true;
      auto clause = protagonist_clause(h, *detail, g.mention.character, options);
      std::string sentence;
      if (said == 0 && (first_group || g.label != previous_label)) {
        sentence = "In terms of " + g.label + ", " + clause;
      } else if (said == 0) {
        sentence = capitalize(clause);
      } else {
        sentence = (said == 1 ? "In fact, " : "Moreover, ") + clause;
      }
      summary.sentences.push_back({sentence + ".", h.provenance.id});
      ++said;
    }
    if (said) {
      previous_label = g.label;
      first_group = false;
    }
  }

  for (std::size_t i = 0; i < highlights.size(); ++i) {
    if (used[i] || is_negative(highlights[i])) continue;
    summary.sentences.push_back({render_holistic(highlights[i], options.templates),
                                 highlights[i].provenance.id});
  }
  for (const auto& h : highlights) {
    if (is_negative(h)) summary.sentences.push_back({negative_sentence(h), h.provenance.id});
  }
  return summary;
}

}  // namespace hl

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

#include "highlights/query.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "highlights/error.hpp"
#include "highlights/ingest.hpp"

namespace hl {

std::optional<FilterOp> parse_filter_op(std::string_view op) {
  if (op == "=" || op == "==") return FilterOp::Eq;
  if (op == "!=" || op == "<>" || op == "≠") return FilterOp::Ne;
  if (op == "<") return FilterOp::Lt;
  if (op == "<=" || op == "≤") return FilterOp::Le;
  if (op == ">") return FilterOp::Gt;
  if (op == ">=" || op == "≥") return FilterOp::Ge;
  if (op == "in" || op == "IN") return FilterOp::In;
  return std::nullopt;
}

std::string_view to_string(FilterOp op) noexcept {
  switch (op) {
    case FilterOp::Eq: return "=";
    case FilterOp::Ne: return "!=";
    case FilterOp::Lt: return "<";
    case FilterOp::Le: return "<=";
    case FilterOp::Gt: return ">";
    case FilterOp::Ge: return ">=";
    case FilterOp::In: return "in";
  }
  return "=";
}

namespace {

const Feature& require_feature(const Dataset& dataset, const std::string& name) {
  const auto* f = dataset.schema.find(name);
  if (!f) throw Error(Errc::UnknownFeature, "unknown feature '" + name + "'");
  return *f;
}

// Three-way comparison of a fact value with a filter constant; nullopt when
// the value is null or the constant cannot be read in the feature's kind.
std::optional<int> compare(const Value& value, FeatureKind kind, const std::string& constant) {
  if (is_null(value)) return std::nullopt;
  auto sign = [](auto a, auto b) { return a < b ? -1 : (b < a ? 1 : 0); };
  switch (kind) {
    case FeatureKind::Numeric: {
      auto c = parse_number(constant);
      if (!c) return std::nullopt;
      return sign(std::get<double>(value), *c);
    }
    case FeatureKind::DateTime: {
      auto c = parse_iso8601(constant);
      if (!c) return std::nullopt;
      return sign(std::get<DateTime>(value).epoch_seconds, c->epoch_seconds);
    }
    default:
      return sign(std::get<std::string>(value), constant);
  }
}

bool passes(const Value& value, FeatureKind kind, const Filter& filter) {
  if (filter.op == FilterOp::In) {
    return std::any_of(filter.constants.begin(), filter.constants.end(),
                       [&](const std::string& c) { return compare(value, kind, c) == 0; });
  }
  auto cmp = compare(value, kind, filter.constants.front());
  if (!cmp) return false;
  switch (filter.op) {
    case FilterOp::Eq: return *cmp == 0;
    case FilterOp::Ne: return *cmp != 0;
    case FilterOp::Lt: return *cmp < 0;
    case FilterOp::Le: return *cmp <= 0;
    case FilterOp::Gt: return *cmp > 0;
    case FilterOp::Ge: return *cmp >= 0;
    case FilterOp::In: break;
  }
  return false;
}

bool axis_less(const Character& a, const Character& b, bool temporal) {
  if (temporal) {
    if (a.epoch_seconds && b.epoch_seconds) {
      if (*a.epoch_seconds != *b.epoch_seconds) return *a.epoch_seconds < *b.epoch_seconds;
    } else if (a.epoch_seconds.has_value() != b.epoch_seconds.has_value()) {
      return a.epoch_seconds.has_value();
    }
  }
  if (a.description != b.description) return a.description < b.description;
  return a.id < b.id;
}

double fold(std::vector<double>& values, AggregateFunction fn) {
  std::sort(values.begin(), values.end());
  switch (fn) {
    case AggregateFunction::Count: return static_cast<double>(values.size());
    case AggregateFunction::Min: return values.front();
    case AggregateFunction::Max: return values.back();
    case AggregateFunction::Sum:
    case AggregateFunction::Avg: break;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  return fn == AggregateFunction::Avg ? sum / static_cast<double>(values.size()) : sum;
}

}  // namespace

void validate_spec(const Dataset& dataset, const GroupBySpec& spec) {
  if (spec.groupers.empty()) throw Error(Errc::InvalidQuery, "query has no groupBy features");
  if (spec.groupers.size() > 2) {
    throw Error(Errc::UnsupportedGrouperArity,
                "at most two groupBy features are supported, got " +
                    std::to_string(spec.groupers.size()));
  }
  if (spec.groupers.size() == 2 && spec.groupers[0] == spec.groupers[1]) {
    throw Error(Errc::InvalidQuery, "groupBy feature '" + spec.groupers[0] + "' repeated");
  }
  for (const auto& g : spec.groupers) {
    require_feature(dataset, g);
    if (!dataset.character_type_of(g)) {
      throw Error(Errc::NotADimension, "groupBy feature '" + g + "' is not a dimension");
    }
  }
  if (require_feature(dataset, spec.measure).kind != FeatureKind::Numeric) {
    throw Error(Errc::NonNumericMeasure, "measure '" + spec.measure + "' is not numeric");
  }
  for (const auto& f : spec.filters) {
    const auto& feature = require_feature(dataset, f.feature);
    if (f.constants.empty() || (f.op != FilterOp::In && f.constants.size() != 1)) {
      throw Error(Errc::InvalidQuery, "filter on '" + f.feature + "' has the wrong number of values");
    }
    for (const auto& c : f.constants) {
      bool ok = feature.kind == FeatureKind::Numeric    ? parse_number(c).has_value()
                : feature.kind == FeatureKind::DateTime ? parse_iso8601(c).has_value()
                                                        : true;
      if (!ok) {
        throw Error(Errc::InvalidQuery, "filter value '" + c + "' does not fit feature '" +
                                            f.feature + "' of kind " +
                                            std::string(to_string(feature.kind)));
      }
    }
  }
}

std::optional<std::size_t> Axis::index_of(const Character& c) const {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] == c) return i;
  }
  return std::nullopt;
}

ResultSet::ResultSet(GroupBySpec spec, MeasureType measure, std::vector<Axis> axes,
                     std::vector<std::optional<double>> cells)
    : spec_(std::move(spec)), measure_(std::move(measure)), axes_(std::move(axes)),
      cells_(std::move(cells)) {
  std::size_t expected = 1;
  for (const auto& a : axes_) expected *= a.members.size();
  if (axes_.empty() || axes_.size() > 2 || cells_.size() != expected) {
    throw Error(Errc::Internal, "result set cells do not match its axes");
  }
  if (!has_marginals()) return;
  const std::size_t rows = axes_[0].members.size();
  const std::size_t cols = axes_.size() == 2 ? axes_[1].members.size() : 1;
  marginals_.assign(axes_.size(), {});
  marginals_[0].assign(rows, std::nullopt);
  if (axes_.size() == 2) marginals_[1].assign(cols, std::nullopt);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& c = cells_[i * cols + j];
      if (!c) continue;
      marginals_[0][i] = marginals_[0][i].value_or(0.0) + *c;
      grand_total_ += *c;
    }
  }
  if (axes_.size() == 2) {
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t i = 0; i < rows; ++i) {
        const auto& c = cells_[i * cols + j];
        if (c) marginals_[1][j] = marginals_[1][j].value_or(0.0) + *c;
      }
    }
  }
}

const std::optional<double>& ResultSet::cell(std::size_t i, std::size_t j) const {
  if (axes_.size() == 1) return cells_.at(i);
  return cells_.at(i * axes_[1].members.size() + j);
}

std::size_t ResultSet::present_cells() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](const auto& c) { return c.has_value(); }));
}

bool ResultSet::has_marginals() const noexcept {
  return spec_.aggregate == AggregateFunction::Sum || spec_.aggregate == AggregateFunction::Count;
}

const std::vector<std::optional<double>>& ResultSet::marginals(std::size_t axis) const {
  if (!has_marginals()) {
    throw Error(Errc::MarginalsUndefined, "marginals are undefined for aggregate " +
                                              std::string(to_string(spec_.aggregate)));
  }
  return marginals_.at(axis);
}

double ResultSet::grand_total() const {
  if (!has_marginals()) {
    throw Error(Errc::MarginalsUndefined, "grand total is undefined for aggregate " +
                                              std::string(to_string(spec_.aggregate)));
  }
  return grand_total_;
}

namespace {

struct BoundFilter {
  std::size_t index;
  FeatureKind kind;
  const Filter* filter;
};

std::vector<BoundFilter> bind_filters(const Dataset& dataset, const GroupBySpec& spec) {
  std::vector<BoundFilter> filters;
  for (const auto& f : spec.filters) {
    auto idx = dataset.schema.index_of(f.feature);
    if (!idx) throw Error(Errc::UnknownFeature, "unknown feature '" + f.feature + "'");
    filters.push_back({*idx, dataset.schema.features()[*idx].kind, &f});
  }
  return filters;
}

bool keep(const Fact& fact, const std::vector<BoundFilter>& filters) {
  return std::all_of(filters.begin(), filters.end(), [&](const BoundFilter& f) {
    return passes(fact.values[f.index], f.kind, *f.filter);
  });
}

}  // namespace

std::vector<std::size_t> filtered_facts(const Dataset& dataset, const GroupBySpec& spec) {
  auto filters = bind_filters(dataset, spec);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dataset.facts.size(); ++i) {
    if (keep(dataset.facts[i], filters)) out.push_back(i);
  }
  return out;
}

std::string canonical_text(const GroupBySpec& spec) {
  std::string out = "filters=[";
  for (const auto& f : spec.filters) {
    out += f.feature + std::string(to_string(f.op)) + "(";
    for (const auto& c : f.constants) out += c + ";";
    out += "),";
  }
  out += "] groupBy=[";
  for (const auto& g : spec.groupers) out += g + ",";
  out += "] measure=" + spec.measure + " agg=" + std::string(to_string(spec.aggregate));
  return out;
}

ResultSet execute_groupby(const Dataset& dataset, const CharacterRegistry& characters,
                          const GroupBySpec& spec) {
  validate_spec(dataset, spec);
  const auto filters = bind_filters(dataset, spec);
  const std::size_t measure_idx = *dataset.schema.index_of(spec.measure);

  std::vector<Axis> axes;
  std::vector<std::size_t> grouper_idx;
  for (const auto& g : spec.groupers) {
    const auto& type = *dataset.character_type_of(g);
    const auto* ct = characters.find_type(type);
    if (!ct) throw Error(Errc::UnknownCharacterType, "unknown character type '" + type + "'");
    axes.push_back({g, type, ct->temporal, {}});
    grouper_idx.push_back(*dataset.schema.index_of(g));
  }

  // Gather per-coordinate values keyed by character ids.
  using Key = std::pair<std::string, std::string>;
  std::map<Key, std::vector<double>> buckets;
  std::vector<std::set<std::string>> seen(axes.size());
  for (const auto& fact : dataset.facts) {
    if (!keep(fact, filters)) continue;
    Key key;
    bool complete = true;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const auto& v = fact.values[grouper_idx[a]];
      if (is_null(v)) {
        complete = false;
        break;
      }
      (a == 0 ? key.first : key.second) = value_to_string(v);
    }
    if (!complete) continue;
    seen[0].insert(key.first);
    if (axes.size() == 2) seen[1].insert(key.second);
    const auto* m = std::get_if<double>(&fact.values[measure_idx]);
    auto& bucket = buckets[key];
    if (m) bucket.push_back(*m);
  }

  for (std::size_t a = 0; a < axes.size(); ++a) {
    for (const auto& id : seen[a]) {
      axes[a].members.push_back(resolve_character(axes[a].character_type, id, characters));
    }
    std::sort(axes[a].members.begin(), axes[a].members.end(),
              [t = axes[a].temporal](const Character& x, const Character& y) {
                return axis_less(x, y, t);
              });
  }

  const std::size_t rows = axes[0].members.size();
  const std::size_t cols = axes.size() == 2 ? axes[1].members.size() : 1;
  std::vector<std::optional<double>> cells(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      Key key{axes[0].members[i].id, axes.size() == 2 ? axes[1].members[j].id : std::string()};
      auto it = buckets.find(key);
      if (it == buckets.end() || it->second.empty()) continue;
      cells[i * cols + j] = fold(it->second, spec.aggregate);
    }
  }

  const auto* base = dataset.find_measure(spec.measure);
  MeasureType measure{spec.measure, base ? base->unit : std::string(), MeasureKind::Aggregate,
                      spec.aggregate, std::nullopt};
  if (spec.aggregate == AggregateFunction::Count) measure.unit = "items";
  return ResultSet(spec, std::move(measure), std::move(axes), std::move(cells));
}

bool SeriesView::dense() const noexcept {
  return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.value.has_value(); });
}

std::vector<double> SeriesView::values() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (!p.value) {
      throw Error(Errc::SparseSeries, "series over '" + axis_feature + "' has an absent point at '" +
                                          p.character.description + "'");
    }
    out.push_back(*p.value);
  }
  return out;
}

SeriesView marginal_series(const ResultSet& result, std::size_t axis) {
  if (result.spec().aggregate != AggregateFunction::Sum) {
    throw Error(Errc::MarginalsUndefined, "marginal series are undefined for aggregate " +
                                              std::string(to_string(result.spec().aggregate)));
  }
  if (axis >= result.arity()) {
    throw Error(Errc::InvalidQuery, "axis " + std::to_string(axis) + " out of range");
  }
  const auto& a = result.axes()[axis];
  const auto& m = result.marginals(axis);
  SeriesView out{a.feature, a.temporal, {}};
  for (std::size_t i = 0; i < a.members.size(); ++i) out.points.push_back({a.members[i], m[i]});
  return out;
}

SeriesView slice_series(const ResultSet& result, std::size_t fixed_axis, const Character& fixed) {
  if (fixed_axis >= result.arity()) {
    throw Error(Errc::InvalidQuery, "axis " + std::to_string(fixed_axis) + " out of range");
  }
  auto pos = result.axes()[fixed_axis].index_of(fixed);
  if (!pos) {
    throw Error(Errc::CharacterNotOnAxis, "character '" + fixed.description + "' is not on axis '" +
                                              result.axes()[fixed_axis].feature + "'");
  }
  if (result.arity() == 1) {
    const auto& a = result.axes()[0];
    SeriesView out{a.feature, a.temporal, {}};
    if (result.cell(*pos)) out.points.push_back({a.members[*pos], result.cell(*pos)});
    return out;
  }
  const std::size_t other = 1 - fixed_axis;
  const auto& a = result.axes()[other];
  SeriesView out{a.feature, a.temporal, {}};
  bool any = false;
  for (std::size_t k = 0; k < a.members.size(); ++k) {
    const auto& c = fixed_axis == 0 ? result.cell(*pos, k) : result.cell(k, *pos);
    any |= c.has_value();
    out.points.push_back({a.members[k], c});
  }
  if (!any) out.points.clear();
  return out;
}

SeriesView cell_series(const ResultSet& result) {
  if (result.arity() != 1) {
    throw Error(Errc::UnsupportedGrouperArity, "cell series needs a 1-grouper result");
  }
  const auto& a = result.axes()[0];
  SeriesView out{a.feature, a.temporal, {}};
  for (std::size_t i = 0; i < a.members.size(); ++i) out.points.push_back({a.members[i], result.cell(i)});
  return out;
}

}  // namespace hl

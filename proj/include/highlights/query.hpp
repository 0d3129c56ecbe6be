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

// Group-by aggregation over a Dataset. Results keep absent cells distinct
// from zero and fold values in a fixed order so output is reproducible.

#include <optional>
#include <string>
#include <vector>

#include "highlights/core_model.hpp"

namespace hl {

enum class FilterOp { Eq, Ne, Lt, Le, Gt, Ge, In };

std::optional<FilterOp> parse_filter_op(std::string_view op);
std::string_view to_string(FilterOp op) noexcept;

struct Filter {
  std::string feature;
  FilterOp op = FilterOp::Eq;
  // Compared as numbers for Numeric features, by epoch for DateTime
  // features and as text otherwise. `In` uses the whole list.
  std::vector<std::string> constants;
};

struct GroupBySpec {
  std::vector<Filter> filters;
  std::vector<std::string> groupers;
  std::string measure;
  AggregateFunction aggregate = AggregateFunction::Sum;
};

// Throws the query errors execute_groupby would raise, without running it.
void validate_spec(const Dataset& dataset, const GroupBySpec& spec);

struct Axis {
  std::string feature;
  std::string character_type;
  bool temporal = false;
  std::vector<Character> members;

  std::optional<std::size_t> index_of(const Character& c) const;
};

class ResultSet {
 public:
  ResultSet(GroupBySpec spec, MeasureType measure, std::vector<Axis> axes,
            std::vector<std::optional<double>> cells);

  const GroupBySpec& spec() const noexcept { return spec_; }
  const MeasureType& measure() const noexcept { return measure_; }
  const std::vector<Axis>& axes() const noexcept { return axes_; }
  std::size_t arity() const noexcept { return axes_.size(); }

  // Coordinates are axis positions; `j` is ignored for 1-grouper results.
  const std::optional<double>& cell(std::size_t i, std::size_t j = 0) const;
  std::size_t present_cells() const noexcept;
  std::vector<std::optional<double>> const& raw_cells() const noexcept { return cells_; }

  // Defined for SUM and COUNT; nullopt for the other aggregates. A member
  // with no present cells has an absent marginal.
  bool has_marginals() const noexcept;
  const std::vector<std::optional<double>>& marginals(std::size_t axis) const;
  double grand_total() const;

 private:
  GroupBySpec spec_;
  MeasureType measure_;
  std::vector<Axis> axes_;
  std::vector<std::optional<double>> cells_;  // row-major over axes_
  std::vector<std::vector<std::optional<double>>> marginals_;
  double grand_total_ = 0.0;
};

// Indices of the facts that pass every filter of `spec`.
std::vector<std::size_t> filtered_facts(const Dataset& dataset, const GroupBySpec& spec);

// Canonical single-line text of a spec, stable across runs.
std::string canonical_text(const GroupBySpec& spec);

ResultSet execute_groupby(const Dataset& dataset, const CharacterRegistry& characters,
                          const GroupBySpec& spec);

struct SeriesPoint {
  Character character;
  std::optional<double> value;
};

struct SeriesView {
  std::string axis_feature;
  bool temporal = false;
  std::vector<SeriesPoint> points;

  bool dense() const noexcept;
  // Throws Error(SparseSeries) when any point is absent.
  std::vector<double> values() const;
};

// Marginal sums along axis `axis`; SUM results only.
SeriesView marginal_series(const ResultSet& result, std::size_t axis);
// The row or column of cells for `fixed` on `fixed_axis`, ordered along the
// other axis. Absent cells are kept as absent points; a member with no
// present cells gives an empty series.
SeriesView slice_series(const ResultSet& result, std::size_t fixed_axis, const Character& fixed);
// The cells of a 1-grouper result as a series.
SeriesView cell_series(const ResultSet& result);

}  // namespace hl

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

// Highlight extraction. Each detector tests one archetype property and
// yields at most one holistic highlight; when it cannot run it reports a
// diagnostic instead.

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "highlights/core_model.hpp"
#include "highlights/highlight_model.hpp"
#include "highlights/query.hpp"

namespace hl {

enum class CorrelationAlgorithm { Kendall, Pearson, Spearman };

std::optional<CorrelationAlgorithm> parse_correlation_algorithm(std::string_view name);

struct CorrelationBins {
  double significant = 0.7;
  double moderate = 0.4;
};

namespace detector {
inline constexpr const char* kCorrelation = "correlation";
inline constexpr const char* kDistribution = "distribution";
inline constexpr const char* kDominance = "dominance";
inline constexpr const char* kMegaContributor = "megaContributor";
inline constexpr const char* kModality = "modality";
inline constexpr const char* kSeasonality = "seasonality";
inline constexpr const char* kTopK = "topk";
inline constexpr const char* kTrend = "trend";
}  // namespace detector

struct DetectorConfig {
  // Distribution and top-k are opt-in.
  std::set<std::string> enabled = {detector::kCorrelation, detector::kDominance,
                                   detector::kMegaContributor, detector::kModality,
                                   detector::kSeasonality, detector::kTrend};
  std::size_t k = 3;
  double mega_contributor_threshold = 0.40;
  double alpha = 0.05;
  CorrelationBins correlation_bins;
  std::string dominance_mode = "strict";
  double partial_dominance_floor = 0.75;
  double seasonality_threshold = 0.5;
  bool emit_negative = true;
  CorrelationAlgorithm correlation_algorithm = CorrelationAlgorithm::Kendall;

  bool is_enabled(std::string_view name) const { return enabled.count(std::string(name)) > 0; }
  // Throws Error(BadConfig) on unknown detector names or out-of-range values.
  void validate() const;

  static const std::vector<std::string>& all_detectors();
};

struct DetectorOutcome {
  std::optional<HolisticHighlight> highlight;
  // Set when the detector was skipped.
  std::string diagnostic;
};

DetectorOutcome detect_distribution(std::span<const double> values, const MeasureType& measure,
                                    const DetectorConfig& cfg);
DetectorOutcome detect_correlation(std::span<const double> x, std::span<const double> y,
                                   const MeasureType& x_measure, const MeasureType& y_measure,
                                   const DetectorConfig& cfg);
DetectorOutcome detect_trend(const SeriesView& series, const MeasureType& measure,
                             const DetectorConfig& cfg);
DetectorOutcome detect_seasonality(const SeriesView& series, const MeasureType& measure,
                                   const DetectorConfig& cfg);
DetectorOutcome detect_modality(const SeriesView& series, const MeasureType& measure,
                                const DetectorConfig& cfg);
DetectorOutcome detect_topk(const ResultSet& result, const DetectorConfig& cfg);
DetectorOutcome detect_mega_contributors(const ResultSet& result, std::size_t axis,
                                         const DetectorConfig& cfg);
DetectorOutcome detect_dominance(const ResultSet& result, std::size_t axis,
                                 const DetectorConfig& cfg);

// Correlation model for a statistic under the given bins.
std::string correlation_model(double statistic, const CorrelationBins& bins);

struct RunOptions {
  // Copied into every highlight's provenance when set.
  std::optional<std::string> timestamp;
};

// Every enabled detector over every applicable target. Output is ordered by
// detector name, then axis, then measure name; highlight ids are H1, H2, ...
// in that order. Failures become diagnostics.
HighlightReport run_all(const Dataset& dataset, const ResultSet& result, const DetectorConfig& cfg,
                        const RunOptions& options = {});

// Digest over the schema and every fact value.
std::string dataset_digest(const Dataset& dataset);

}  // namespace hl

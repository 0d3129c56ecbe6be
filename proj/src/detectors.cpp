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

#include "highlights/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "highlights/error.hpp"
#include "highlights/stats.hpp"

namespace hl {

std::optional<CorrelationAlgorithm> parse_correlation_algorithm(std::string_view name) {
  if (name == "Kendall" || name == "kendall") return CorrelationAlgorithm::Kendall;
  if (name == "Pearson" || name == "pearson") return CorrelationAlgorithm::Pearson;
  if (name == "Spearman" || name == "spearman") return CorrelationAlgorithm::Spearman;
  return std::nullopt;
}

const std::vector<std::string>& DetectorConfig::all_detectors() {
  static const std::vector<std::string> names = {
      detector::kCorrelation, detector::kDistribution, detector::kDominance,
      detector::kMegaContributor, detector::kModality, detector::kSeasonality,
      detector::kTopK, detector::kTrend};
  return names;
}

void DetectorConfig::validate() const {
  const auto& known = all_detectors();
  for (const auto& name : enabled) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw Error(Errc::BadConfig, "unknown detector '" + name + "'");
    }
  }
  auto fraction = [](double v, const char* what) {
    if (!(v > 0.0 && v < 1.0)) {
      throw Error(Errc::BadConfig, std::string(what) + " must lie in (0, 1)");
    }
  };
  fraction(mega_contributor_threshold, "megaContributorThreshold");
  fraction(alpha, "alpha");
  fraction(correlation_bins.significant, "correlationBins.significant");
  fraction(correlation_bins.moderate, "correlationBins.moderate");
  fraction(partial_dominance_floor, "partialDominanceFloor");
  fraction(seasonality_threshold, "seasonalityThreshold");
  if (correlation_bins.moderate > correlation_bins.significant) {
    throw Error(Errc::BadConfig, "correlationBins.moderate exceeds correlationBins.significant");
  }
  if (k < 1) throw Error(Errc::BadConfig, "k must be at least 1");
  if (dominance_mode != "strict") {
    throw Error(Errc::BadConfig, "unsupported dominanceMode '" + dominance_mode + "'");
  }
}

namespace {

DetectorOutcome skipped(std::string message) { return {std::nullopt, std::move(message)}; }

DetectorOutcome emitted(HolisticHighlight h) { return {std::move(h), {}}; }

// Short reason for a kernel or query failure.
std::string reason(const Error& e) {
  switch (e.code()) {
    case Errc::InsufficientN:
    case Errc::NOutOfRange: return std::string("insufficient data: ") + e.what();
    case Errc::ConstantInput:
    case Errc::AllTiedInput:
    case Errc::ZeroRange: return std::string("constant input: ") + e.what();
    case Errc::SparseSeries: return std::string("sparse series: ") + e.what();
    default: return std::string(errc_name(e.code())) + ": " + e.what();
  }
}

HolisticHighlight make_highlight(std::string type, std::string algorithm, const MeasureType& measure) {
  HolisticHighlight h;
  h.type = std::move(type);
  h.algorithm = std::move(algorithm);
  const auto* info = HighlightCatalog::standard().algorithm(h.algorithm);
  h.model_type = info ? info->model_type : std::string();
  h.measure = {standard_role("main measure"), measure.name, measure.unit};
  return h;
}

SupportiveExplanator explanator(const char* role, std::string feature) {
  return {standard_role(role), std::move(feature)};
}

}  // namespace

std::string correlation_model(double statistic, const CorrelationBins& bins) {
  const double magnitude = std::fabs(statistic);
  const bool positive = statistic > 0;
  if (magnitude >= bins.significant) {
    return positive ? "Positively Significant" : "Negatively Significant";
  }
  if (magnitude >= bins.moderate) {
    return positive ? "Moderately Positively Significant" : "Moderately Negatively Significant";
  }
  return "Insignificant";
}

DetectorOutcome detect_distribution(std::span<const double> values, const MeasureType& measure,
                                    const DetectorConfig& cfg) {
  if (values.size() < 3) {
    return skipped("insufficient data: distribution needs at least 3 values, got " +
                   std::to_string(values.size()));
  }
  stats::KernelResult sw;
  try {
    sw = stats::shapiro_wilk(values);
  } catch (const Error& e) {
    return skipped(reason(e));
  }
  std::string algorithm = "Shapiro-Wilk";
  std::string model;
  double p = *sw.p_value;
  if (p > cfg.alpha) {
    model = "Normal";
  } else {
    model = "Unclassified";
    try {
      auto ks = stats::ks_uniform(values);
      algorithm = "Kolmogorov-Smirnov";
      p = *ks.p_value;
      if (p > cfg.alpha) model = "Uniform";
    } catch (const Error&) {
      // Too few points for the uniformity check; keep the normality verdict.
    }
  }
  if (model == "Unclassified" && !cfg.emit_negative) return {};
  auto h = make_highlight("Distribution", algorithm, measure);
  h.model = model;
  h.score_type = "p-value";
  h.score = p;
  return emitted(std::move(h));
}

DetectorOutcome detect_correlation(std::span<const double> x, std::span<const double> y,
                                   const MeasureType& x_measure, const MeasureType& y_measure,
                                   const DetectorConfig& cfg) {
  stats::KernelResult r;
  std::string algorithm, score_type;
  try {
    switch (cfg.correlation_algorithm) {
      case CorrelationAlgorithm::Kendall:
        r = stats::kendall_tau(x, y);
        algorithm = "Kendall";
        score_type = "tau";
        break;
      case CorrelationAlgorithm::Pearson:
        r = stats::pearson(x, y);
        algorithm = "Pearson";
        score_type = "r";
        break;
      case CorrelationAlgorithm::Spearman:
        r = stats::spearman(x, y);
        algorithm = "Spearman";
        score_type = "rho";
        break;
    }
  } catch (const Error& e) {
    return skipped(reason(e));
  }
  auto model = correlation_model(r.statistic, cfg.correlation_bins);
  if (model == "Insignificant" && !cfg.emit_negative) return {};
  auto h = make_highlight("Correlation", algorithm, x_measure);
  h.model = std::move(model);
  h.score_type = std::move(score_type);
  h.score = r.statistic;
  h.explanators.push_back(explanator("paired measure", y_measure.name));
  return emitted(std::move(h));
}

DetectorOutcome detect_trend(const SeriesView& series, const MeasureType& measure,
                             const DetectorConfig& cfg) {
  stats::MannKendallResult mk;
  try {
    mk = stats::mann_kendall(series.values());
  } catch (const Error& e) {
    return skipped(reason(e));
  }
  std::string model = "No trend";
  if (mk.p_value <= cfg.alpha && mk.s != 0) model = mk.s > 0 ? "Increasing" : "Decreasing";
  if (model == "No trend" && !cfg.emit_negative) return {};
  auto h = make_highlight("Trend", "Mann-Kendall", measure);
  h.model = std::move(model);
  h.score_type = "p-value";
  h.score = mk.p_value;
  h.explanators.push_back(explanator("ordering axis", series.axis_feature));
  return emitted(std::move(h));
}

DetectorOutcome detect_seasonality(const SeriesView& series, const MeasureType& measure,
                                   const DetectorConfig& cfg) {
  std::vector<double> values;
  try {
    values = series.values();
  } catch (const Error& e) {
    return skipped(reason(e));
  }
  const std::size_t n = values.size();
  if (n < 5) {
    return skipped("insufficient data: seasonality needs at least 5 points, got " + std::to_string(n));
  }
  std::size_t best_lag = 0;
  double best = -2.0;
  try {
    for (std::size_t lag = 2; lag <= n / 2 && n >= 2 * lag + 1; ++lag) {
      double r = stats::autocorrelation(values, lag).statistic;
      if (r > best) {
        best = r;
        best_lag = lag;
      }
    }
  } catch (const Error& e) {
    return skipped(reason(e));
  }
  const bool seasonal = best >= cfg.seasonality_threshold;
  if (!seasonal && !cfg.emit_negative) return {};
  auto h = make_highlight("Seasonality", "Lagged Autocorrelation", measure);
  h.model = seasonal ? "Seasonal(lag=" + std::to_string(best_lag) + ")" : "Not seasonal";
  h.score_type = "autocorrelation";
  h.score = best;
  h.explanators.push_back(explanator("ordering axis", series.axis_feature));
  return emitted(std::move(h));
}

DetectorOutcome detect_modality(const SeriesView& series, const MeasureType& measure,
                                const DetectorConfig&) {
  std::vector<double> values;
  std::vector<std::size_t> peaks;
  try {
    values = series.values();
    peaks = stats::find_local_maxima(values);
  } catch (const Error& e) {
    return skipped(reason(e));
  }
  if (peaks.empty()) return {};
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                      static_cast<double>(values.size());
  if (mean == 0.0) return skipped("undefined score: series mean is zero");

  auto h = make_highlight("Modality", "Strict Local Maxima", measure);
  h.model = peaks.size() == 1 ? "Unimodal" : peaks.size() == 2 ? "Bimodal" : "Multimodal";
  h.score_type = "peak-to-mean ratio";
  double top = values[peaks.front()];
  for (auto p : peaks) top = std::max(top, values[p]);
  h.score = top / mean;
  h.explanators.push_back(explanator("ordering axis", series.axis_feature));
  for (auto p : peaks) {
    ElementaryHighlight e;
    e.type = "Peak";
    e.characters.push_back({standard_role("peak position"), series.points[p].character});
    e.measure_value = values[p];
    e.score_type = "peak-to-mean ratio";
    e.score = values[p] / mean;
    h.details.push_back(std::move(e));
  }
  return emitted(std::move(h));
}

DetectorOutcome detect_topk(const ResultSet& result, const DetectorConfig& cfg) {
  struct Entry {
    std::size_t i, j;
    double value;
  };
  std::vector<Entry> cells;
  const std::size_t rows = result.axes()[0].members.size();
  const std::size_t cols = result.arity() == 2 ? result.axes()[1].members.size() : 1;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (const auto& c = result.cell(i, j)) cells.push_back({i, j, *c});
    }
  }
  if (cells.empty()) return skipped("insufficient data: result has no cells");
  // Row-major order is axis order, so a stable sort breaks ties by axis.
  std::stable_sort(cells.begin(), cells.end(),
                   [](const Entry& a, const Entry& b) { return a.value > b.value; });
  const std::size_t k = std::min(cfg.k, cells.size());

  auto h = make_highlight("Top-k", "Descending Sort", result.measure());
  h.model = "Top-k(k=" + std::to_string(k) + ")";
  h.score_type = "ranked cells";
  h.score = static_cast<double>(k);
  for (const auto& axis : result.axes()) h.explanators.push_back(explanator("coordinate axis", axis.feature));
  for (std::size_t r = 0; r < k; ++r) {
    ElementaryHighlight e;
    e.type = "Top-k";
    e.characters.push_back({standard_role("coordinate"), result.axes()[0].members[cells[r].i]});
    if (result.arity() == 2) {
      e.characters.push_back({standard_role("coordinate"), result.axes()[1].members[cells[r].j]});
    }
    e.measure_value = cells[r].value;
    e.score_type = "rank";
    e.score = static_cast<double>(r + 1);
    h.details.push_back(std::move(e));
  }
  return emitted(std::move(h));
}

DetectorOutcome detect_mega_contributors(const ResultSet& result, std::size_t axis,
                                         const DetectorConfig& cfg) {
  if (result.spec().aggregate != AggregateFunction::Sum) {
    return skipped("not applicable: mega-contributors need a SUM aggregate");
  }
  if (axis >= result.arity()) return skipped("not applicable: no axis " + std::to_string(axis));
  const double total = result.grand_total();
  if (!(total > 0.0)) return skipped("not applicable: grand total is not positive");
  const auto& marginals = result.marginals(axis);
  for (const auto& m : marginals) {
    if (m && *m < 0.0) return skipped("not applicable: negative marginals make shares undefined");
  }

  const auto& members = result.axes()[axis].members;
  auto h = make_highlight("Mega-contributor", "Marginal Share", result.measure());
  h.score_type = "share of total";
  h.explanators.push_back(explanator("breakdown axis", result.axes()[axis].feature));
  double max_share = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!marginals[i]) continue;
    const double share = *marginals[i] / total;
    max_share = std::max(max_share, share);
    if (share < cfg.mega_contributor_threshold) continue;
    ElementaryHighlight e;
    e.type = "Mega-contributor";
    e.characters.push_back({standard_role("mega-contributor"), members[i]});
    e.measure_value = *marginals[i];
    e.score_type = "share of total";
    e.score = share;
    h.details.push_back(std::move(e));
  }
  h.score = max_share;
  h.model = h.details.empty() ? "Balanced contribution" : "Mega-contributor present";
  if (h.details.empty() && !cfg.emit_negative) return {};
  return emitted(std::move(h));
}

DetectorOutcome detect_dominance(const ResultSet& result, std::size_t axis,
                                 const DetectorConfig& cfg) {
  if (result.arity() != 2) return skipped("not applicable: dominance needs two groupers");
  if (axis > 1) return skipped("not applicable: no axis " + std::to_string(axis));
  const auto& members = result.axes()[axis].members;
  const std::size_t slices = result.axes()[1 - axis].members.size();
  if (members.size() < 2) return skipped("insufficient data: fewer than two characters on the axis");

  auto cell = [&](std::size_t member, std::size_t slice) -> const std::optional<double>& {
    return axis == 0 ? result.cell(member, slice) : result.cell(slice, member);
  };
  const double peers = static_cast<double>(members.size() - 1);

  auto h = make_highlight("Dominance", "Strict Peer Dominance", result.measure());
  h.score_type = "percentage of dominated peers";
  h.explanators.push_back(explanator("peer axis", result.axes()[axis].feature));
  h.explanators.push_back(explanator("slice axis", result.axes()[1 - axis].feature));
  bool full = false;
  double best = 0.0;
  for (std::size_t c = 0; c < members.size(); ++c) {
    std::size_t dominated = 0;
    for (std::size_t other = 0; other < members.size(); ++other) {
      if (other == c) continue;
      bool comparable = false, beats = true;
      for (std::size_t b = 0; b < slices && beats; ++b) {
        const auto& mine = cell(c, b);
        const auto& theirs = cell(other, b);
        if (!mine || !theirs) continue;
        comparable = true;
        beats = *mine > *theirs;
      }
      dominated += comparable && beats;
    }
    const double score = static_cast<double>(dominated) / peers;
    if (score < 1.0 && score < cfg.partial_dominance_floor) continue;
    full |= score == 1.0;
    best = std::max(best, score);

    ElementaryHighlight e;
    e.type = "Peer dominator";
    e.characters.push_back({standard_role("dominator"), members[c]});
    if (result.has_marginals() && result.marginals(axis)[c]) {
      e.measure_value = *result.marginals(axis)[c];
    } else {
      double sum = 0.0;
      std::size_t present = 0;
      for (std::size_t b = 0; b < slices; ++b) {
        if (const auto& v = cell(c, b)) {
          sum += *v;
          ++present;
        }
      }
      e.measure_value = present ? sum / static_cast<double>(present) : 0.0;
    }
    e.score_type = "percentage of dominated peers";
    e.score = score;
    h.details.push_back(std::move(e));
  }
  if (h.details.empty()) return {};
  h.model = full ? "Full domination" : "Partial domination";
  h.score = best;
  return emitted(std::move(h));
}

std::string dataset_digest(const Dataset& dataset) {
  std::string bytes;
  for (const auto& f : dataset.schema.features()) {
    bytes += f.name;
    bytes += '\x1f';
    bytes += to_string(f.kind);
    bytes += '\x1e';
  }
  for (const auto& fact : dataset.facts) {
    for (const auto& v : fact.values) {
      bytes += value_to_string(v);
      bytes += '\x1f';
    }
    bytes += '\x1e';
  }
  return digest(bytes);
}

HighlightReport run_all(const Dataset& dataset, const ResultSet& result, const DetectorConfig& cfg,
                        const RunOptions& options) {
  HighlightReport report;
  auto record = [&](const char* name, const std::string& target, DetectorOutcome outcome) {
    if (outcome.highlight) report.highlights.push_back(std::move(*outcome.highlight));
    if (!outcome.diagnostic.empty()) report.diagnostics.push_back({name, target, outcome.diagnostic});
  };
  const auto& measure = result.measure();

  if (cfg.is_enabled(detector::kCorrelation)) {
    std::vector<const MeasureType*> measures;
    for (const auto& m : dataset.measures) measures.push_back(&m);
    std::sort(measures.begin(), measures.end(),
              [](const MeasureType* a, const MeasureType* b) { return a->name < b->name; });
    const auto rows = filtered_facts(dataset, result.spec());
    for (std::size_t a = 0; a < measures.size(); ++a) {
      for (std::size_t b = a + 1; b < measures.size(); ++b) {
        const auto ia = *dataset.schema.index_of(measures[a]->name);
        const auto ib = *dataset.schema.index_of(measures[b]->name);
        std::vector<double> x, y;
        for (auto r : rows) {
          const auto* va = std::get_if<double>(&dataset.facts[r].values[ia]);
          const auto* vb = std::get_if<double>(&dataset.facts[r].values[ib]);
          if (va && vb) {
            x.push_back(*va);
            y.push_back(*vb);
          }
        }
        record(detector::kCorrelation, measures[a]->name + "~" + measures[b]->name,
               detect_correlation(x, y, *measures[a], *measures[b], cfg));
      }
    }
  }

  if (cfg.is_enabled(detector::kDistribution)) {
    std::vector<double> values;
    for (const auto& c : result.raw_cells()) {
      if (c) values.push_back(*c);
    }
    record(detector::kDistribution, "cells", detect_distribution(values, measure, cfg));
  }

  if (cfg.is_enabled(detector::kDominance)) {
    if (result.arity() != 2) {
      record(detector::kDominance, result.axes()[0].feature,
             skipped("not applicable: dominance needs two groupers"));
    } else {
      for (std::size_t a = 0; a < 2; ++a) {
        record(detector::kDominance, result.axes()[a].feature, detect_dominance(result, a, cfg));
      }
    }
  }

  if (cfg.is_enabled(detector::kMegaContributor)) {
    for (std::size_t a = 0; a < result.arity(); ++a) {
      record(detector::kMegaContributor, result.axes()[a].feature,
             detect_mega_contributors(result, a, cfg));
    }
  }

  // Series detectors run over the marginal series of every time axis.
  auto series_detector = [&](const char* name, auto detect) {
    if (!cfg.is_enabled(name)) return;
    bool any = false;
    for (std::size_t a = 0; a < result.arity(); ++a) {
      const auto& axis = result.axes()[a];
      if (!axis.temporal) continue;
      any = true;
      std::optional<SeriesView> series;
      try {
        series = result.arity() == 1 ? cell_series(result) : marginal_series(result, a);
      } catch (const Error& e) {
        record(name, axis.feature, skipped(reason(e)));
        continue;
      }
      record(name, axis.feature, detect(*series, measure, cfg));
    }
    if (!any) record(name, "", skipped("not applicable: result has no time axis"));
  };
  series_detector(detector::kModality, detect_modality);
  series_detector(detector::kSeasonality, detect_seasonality);

  if (cfg.is_enabled(detector::kTopK)) record(detector::kTopK, "cells", detect_topk(result, cfg));

  series_detector(detector::kTrend, detect_trend);

  const auto query_digest = digest(canonical_text(result.spec()));
  const auto data_digest = dataset_digest(dataset);
  for (std::size_t i = 0; i < report.highlights.size(); ++i) {
    auto& p = report.highlights[i].provenance;
    p.id = "H" + std::to_string(i + 1);
    p.query_digest = query_digest;
    p.dataset_digest = data_digest;
    p.timestamp = options.timestamp;
  }
  return report;
}

}  // namespace hl

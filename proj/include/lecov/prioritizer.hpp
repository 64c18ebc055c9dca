// Copyright 2026 The LeCov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "lecov/coverage.hpp"
#include "lecov/error.hpp"

namespace lecov {

struct ScoredCase {
  std::string prompt_id;
  double raw_score = 0.0;
  double normalized_score = 0.0;
  std::size_t rank = 0;

  bool operator==(const ScoredCase&) const = default;
};

struct PrioritizationReport {
  double budget_fraction = 1.0;
  std::vector<std::string> selected;  // rank order
  double mae = 0.0;
  double mse = 0.0;
};

/// Coverage of the singleton test set {trace}.
inline double score_case(const GenerationTrace& trace, const CoverageState& fresh, CriterionId criterion) {
  CoverageState s = fresh;
  s.ingest(trace);
  return s.value(criterion);
}

inline double score_case(const GenerationTrace& trace, const CalibrationBounds& bounds, const CriteriaConfig& config,
                         CriterionId criterion) {
  return score_case(trace, CoverageState(bounds, config), criterion);
}

/// ceil(fraction * n) with the float product snapped to integers it is
/// within 1e-9 of, so 0.2 * 100 selects 20 and not 21.
inline std::size_t budget_size(double budget_fraction, std::size_t n) {
  if (!(budget_fraction > 0.0 && budget_fraction <= 1.0))
    throw Error(ErrorKind::Domain, "budget fraction must lie in (0, 1]");
  const double exact = budget_fraction * static_cast<double>(n);
  const double nearest = std::round(exact);
  const double size = std::abs(exact - nearest) < 1e-9 ? nearest : std::ceil(exact);
  return std::min(n, static_cast<std::size_t>(size));
}

/// Ids ordered by descending score, ties by ascending id, truncated to
/// ceil(budget_fraction * n).
inline std::vector<std::string> rank(std::vector<std::pair<std::string, double>> scores, double budget_fraction) {
  if (scores.empty()) throw Error(ErrorKind::Domain, "cannot rank an empty pool");
  const std::size_t take = budget_size(budget_fraction, scores.size());
  std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(std::move(scores[i].first));
  return out;
}

/// Min-max normalized pool with ranks assigned; a constant pool maps to 0.5.
inline std::vector<ScoredCase> normalize_scores(const std::vector<std::pair<std::string, double>>& scores) {
  std::vector<ScoredCase> out;
  out.reserve(scores.size());
  if (scores.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end(),
                                                  [](const auto& a, const auto& b) { return a.second < b.second; });
  const double lo = lo_it->second;
  const double hi = hi_it->second;
  for (const auto& [id, raw] : scores)
    out.push_back({id, raw, hi > lo ? (raw - lo) / (hi - lo) : 0.5, 0});
  const auto order = rank(scores, 1.0);
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < order.size(); ++i) position.emplace(order[i], i);
  for (auto& c : out) c.rank = position.at(c.prompt_id);
  return out;
}

/// MAE and MSE of normalized score against the 0/1 defect label, over the
/// top ceil(budget_fraction * n) cases by rank.
inline PrioritizationReport evaluate(const std::vector<ScoredCase>& scored, const std::map<std::string, int>& labels,
                                     double budget_fraction) {
  if (scored.empty()) throw Error(ErrorKind::Domain, "cannot evaluate an empty pool");
  PrioritizationReport report;
  report.budget_fraction = budget_fraction;
  const std::size_t take = budget_size(budget_fraction, scored.size());

  std::vector<const ScoredCase*> by_rank;
  by_rank.reserve(scored.size());
  for (const auto& c : scored) by_rank.push_back(&c);
  std::sort(by_rank.begin(), by_rank.end(), [](const ScoredCase* a, const ScoredCase* b) {
    if (a->rank != b->rank) return a->rank < b->rank;
    return a->prompt_id < b->prompt_id;
  });

  double abs_sum = 0.0;
  double sq_sum = 0.0;
  for (std::size_t i = 0; i < take; ++i) {
    const ScoredCase& c = *by_rank[i];
    const auto it = labels.find(c.prompt_id);
    if (it == labels.end()) throw Error(ErrorKind::Domain, "no label for selected case '" + c.prompt_id + "'");
    const double residual = c.normalized_score - static_cast<double>(it->second);
    abs_sum += std::abs(residual);
    sq_sum += residual * residual;
    report.selected.push_back(c.prompt_id);
  }
  report.mae = abs_sum / static_cast<double>(take);
  report.mse = sq_sum / static_cast<double>(take);
  return report;
}

/// Greedy-marginal ordering: each pick maximizes the coverage it adds to
/// the already-selected prefix (ties by ascending id). The returned score
/// of a case is its marginal gain, as a fraction of the criterion total,
/// at the moment it was picked. Gains never increase along the pick order
/// and equal gains are picked by ascending id, so rank() over these scores
/// reproduces the greedy order.
inline std::vector<std::pair<std::string, double>> greedy_marginal_scores(const std::vector<GenerationTrace>& traces,
                                                                          const CoverageState& fresh,
                                                                          CriterionId criterion) {
  std::vector<TraceFootprint> fps;
  fps.reserve(traces.size());
  for (const auto& t : traces) fps.push_back(fresh.footprint(t));
  std::vector<std::size_t> remaining(traces.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::sort(remaining.begin(), remaining.end(),
            [&](std::size_t a, std::size_t b) { return traces[a].prompt_id < traces[b].prompt_id; });

  CoverageState state = fresh;
  const double total = static_cast<double>(std::max<std::size_t>(1, state.total(criterion)));
  std::vector<std::pair<std::string, double>> out;
  out.reserve(traces.size());
  while (!remaining.empty()) {
    std::size_t best = 0;
    std::size_t best_gain = state.gain(fps[remaining[0]], criterion);
    for (std::size_t i = 1; i < remaining.size(); ++i) {
      const std::size_t g = state.gain(fps[remaining[i]], criterion);
      if (g > best_gain) {
        best = i;
        best_gain = g;
      }
    }
    const std::size_t pick = remaining[best];
    state.apply(fps[pick]);
    out.emplace_back(traces[pick].prompt_id, static_cast<double>(best_gain) / total);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

}  // namespace lecov

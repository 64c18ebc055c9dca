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

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lecov/coverage.hpp"
#include "lecov/error.hpp"
#include "lecov/prioritizer.hpp"

namespace lecov {

inline nlohmann::ordered_json config_json(const CriteriaConfig& c) {
  return {{"k", c.k_sections}, {"h", c.h_threshold}, {"itnc_k", c.itnc_k}, {"fhnc_r", c.fhnc_r}};
}

/// All nine values (or only `only`), covered/total counts, diagnostics
/// and the configuration echo.
inline nlohmann::ordered_json coverage_report(const CoverageState& s, std::optional<CriterionId> only = std::nullopt) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["kind"] = "coverage";
  j["traces"] = s.ingested_traces();
  j["config"] = config_json(s.config());
  j["bounds"] = ordered_json{{"profile_traces", s.bounds().traces}, {"flagged", s.bounds().flagged_keys()}};
  ordered_json crit;
  for (const CriterionId c : kAllCriteria) {
    if (only && *only != c) continue;
    crit[std::string(criterion_name(c))] = ordered_json{{"value", s.value(c)}, {"covered", s.covered(c)}, {"total", s.total(c)}};
  }
  j["criteria"] = std::move(crit);
  j["diagnostics"] = ordered_json{{"out_of_range", s.out_of_range()}};
  return j;
}

inline nlohmann::ordered_json prioritization_report(CriterionId criterion, const CriteriaConfig& config, bool greedy,
                                                    const std::vector<ScoredCase>& scored, double budget_fraction,
                                                    const std::vector<std::string>& selected,
                                                    const std::optional<PrioritizationReport>& evaluation) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["kind"] = "prioritization";
  j["criterion"] = std::string(criterion_name(criterion));
  j["scoring"] = greedy ? "greedy-marginal" : "singleton";
  j["config"] = config_json(config);
  j["budget_fraction"] = budget_fraction;
  j["pool"] = scored.size();
  j["selected"] = selected;
  std::vector<const ScoredCase*> by_rank;
  for (const auto& c : scored) by_rank.push_back(&c);
  std::sort(by_rank.begin(), by_rank.end(), [](const ScoredCase* a, const ScoredCase* b) { return a->rank < b->rank; });
  ordered_json cases = ordered_json::array();
  for (const auto* c : by_rank)
    cases.push_back(ordered_json{{"prompt_id", c->prompt_id}, {"rank", c->rank}, {"raw_score", c->raw_score},
                                 {"normalized_score", c->normalized_score}});
  j["cases"] = std::move(cases);
  if (evaluation) j["metrics"] = ordered_json{{"mae", evaluation->mae}, {"mse", evaluation->mse}};
  return j;
}

namespace detail {

inline std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace detail

/// Human-readable rendering of any report written by the CLI.
inline std::string render_report(const nlohmann::ordered_json& j) {
  std::ostringstream out;
  const std::string kind = j.value("kind", "");
  if (kind == "coverage") {
    out << "Coverage over " << j.at("traces").get<std::uint64_t>() << " trace(s)\n";
    const auto& cfg = j.at("config");
    out << "  k=" << cfg.at("k") << " h=" << cfg.at("h") << " itnc_k=" << cfg.at("itnc_k") << " fhnc_r=" << cfg.at("fhnc_r")
        << "\n\n";
    out << "  criterion     value   covered/total\n";
    for (const auto& [name, c] : j.at("criteria").items()) {
      char line[128];
      std::snprintf(line, sizeof line, "  %-9s  %8s   %zu/%zu\n", name.c_str(),
                    detail::fixed(c.at("value").get<double>()).c_str(), c.at("covered").get<std::size_t>(),
                    c.at("total").get<std::size_t>());
      out << line;
    }
    out << "\n  out-of-range observations: " << j.at("diagnostics").at("out_of_range") << '\n';
    const auto& flagged = j.at("bounds").at("flagged");
    if (!flagged.empty()) out << "  degenerate bounds: " << flagged.size() << " key(s)\n";
  } else if (kind == "prioritization") {
    out << "Prioritization by " << j.at("criterion").get<std::string>() << " (" << j.at("scoring").get<std::string>()
        << "), budget " << detail::fixed(j.at("budget_fraction").get<double>(), 3) << " of " << j.at("pool") << " case(s)\n";
    std::size_t shown = 0;
    for (const auto& c : j.at("cases")) {
      if (shown++ >= j.at("selected").size()) break;
      out << "  #" << c.at("rank").get<std::size_t>() + 1 << "  " << c.at("prompt_id").get<std::string>() << "  "
          << detail::fixed(c.at("raw_score").get<double>()) << '\n';
    }
    if (j.contains("metrics"))
      out << "  MAE " << detail::fixed(j["metrics"]["mae"].get<double>()) << "  MSE "
          << detail::fixed(j["metrics"]["mse"].get<double>()) << '\n';
  } else if (kind == "campaign") {
    const auto& s = j.at("summary");
    out << "Campaign guided by " << j.at("criterion").get<std::string>() << " (" << j.at("mode").get<std::string>()
        << " enqueue), budget " << j.at("budget") << ", seed " << j.at("rng_seed") << '\n';
    out << "  defects: " << s.at("defects") << "  TSR: " << detail::fixed(s.at("tsr").get<double>())
        << "  unknown: " << s.at("unknown") << "  queue refills: " << s.at("refills") << '\n';
    std::size_t enq = 0;
    for (const auto& it : j.at("iterations")) enq += it.at("enqueued").get<bool>() ? 1 : 0;
    out << "  enqueued mutants: " << enq << '\n';
    out << "  final coverage:";
    for (const auto& [name, v] : s.at("coverage").items()) out << ' ' << name << '=' << detail::fixed(v.get<double>());
    out << '\n';
    for (const auto& d : j.at("defects"))
      out << "  [" << d.at("id").get<std::string>() << " <- " << d.at("parent").get<std::string>() << "] "
          << d.at("text").get<std::string>() << '\n';
  } else {
    throw Error(ErrorKind::Syntax, "unknown report kind '" + kind + "'");
  }
  return out.str();
}

}  // namespace lecov

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

// Coverage-guided testing loop:
//
//   Q <- seeds, U <- {}, i <- 0
//   while i < b:
//     i <- i + 1
//     t_o <- dequeue(Q)            (Q refilled from the seeds when empty)
//     t_n <- mutate(t_o)
//     r, trace <- M(t_n)
//     if judge(t_n, r) is Defect: U <- U + t_n
//     elif new_coverage(state, trace): ingest trace; Q <- Q + t_n
//   return U

#pragma once

#include <cstdint>
#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lecov/coverage.hpp"
#include "lecov/error.hpp"
#include "lecov/mutator.hpp"
#include "lecov/rng.hpp"
#include "lecov/runner.hpp"

namespace lecov {

struct TestCase {
  std::string id;
  std::string text;
  std::string parent_id;  // empty for seeds
  std::string root_id;    // seed this case descends from
};

enum class VerdictKind { Defect, Pass, Unknown };

constexpr std::string_view verdict_name(VerdictKind v) noexcept {
  switch (v) {
    case VerdictKind::Defect: return "defect";
    case VerdictKind::Pass: return "pass";
    case VerdictKind::Unknown: return "unknown";
  }
  return "?";
}

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::string rationale;
};

class Judge {
 public:
  virtual ~Judge() = default;
  /// Throwing counts as an Unknown verdict.
  virtual Verdict assess(const TestCase& test, std::string_view response) = 0;
};

/// Defect iff the response contains one of the keywords.
class KeywordJudge final : public Judge {
 public:
  explicit KeywordJudge(std::vector<std::string> keywords) : keywords_(std::move(keywords)) {}

  Verdict assess(const TestCase&, std::string_view response) override {
    for (const auto& k : keywords_)
      if (!k.empty() && response.find(k) != std::string_view::npos) return {VerdictKind::Defect, "contains '" + k + "'"};
    return {VerdictKind::Pass, "no keyword"};
  }

 private:
  std::vector<std::string> keywords_;
};

/// Defect iff the response differs from the expected answer of the case
/// (looked up by case id, then by the seed it descends from).
class ExactMatchJudge final : public Judge {
 public:
  explicit ExactMatchJudge(std::map<std::string, std::string> expected) : expected_(std::move(expected)) {}

  /// `id<TAB>expected answer` per line.
  static ExactMatchJudge load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open expected-answer file " + path);
    std::map<std::string, std::string> expected;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos) throw Error(ErrorKind::Syntax, "expected-answer line lacks a tab: " + line);
      expected[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return ExactMatchJudge(std::move(expected));
  }

  Verdict assess(const TestCase& test, std::string_view response) override {
    auto it = expected_.find(test.id);
    if (it == expected_.end()) it = expected_.find(test.root_id);
    if (it == expected_.end()) return {VerdictKind::Unknown, "no expected answer for '" + test.id + "'"};
    if (response == it->second) return {VerdictKind::Pass, "matches expected answer"};
    return {VerdictKind::Defect, "differs from expected answer"};
  }

 private:
  std::map<std::string, std::string> expected_;
};

enum class EnqueueMode { Guided, Random };

struct CampaignOptions {
  std::uint64_t budget = 0;
  CriterionId criterion = CriterionId::IHNC;
  CriteriaConfig config;
  std::uint64_t rng_seed = 0;
  EnqueueMode mode = EnqueueMode::Guided;
  double random_enqueue_probability = 0.5;
  bool reenqueue_defects = false;  // defects also go through the coverage check
  int mutations_per_step = 1;
};

struct IterationRecord {
  std::uint64_t i = 0;
  std::string case_id;
  std::string parent_id;
  std::vector<AppliedMutation> mutations;
  VerdictKind verdict = VerdictKind::Unknown;
  std::string rationale;
  std::size_t coverage_gain = 0;  // committed items of the guiding criterion
  bool enqueued = false;
  bool refilled = false;  // Q was empty and reloaded with the seeds before this iteration
};

struct CampaignResult {
  std::vector<TestCase> defects;
  std::vector<IterationRecord> log;
  CoverageState state;
  std::uint64_t budget = 0;
  std::uint64_t unknown = 0;
  std::uint64_t refills = 0;

  double tsr() const noexcept {
    return budget == 0 ? 0.0 : static_cast<double>(defects.size()) / static_cast<double>(budget);
  }
};

/// Seeds from text: `id<TAB>text` lines, or bare text lines (id s<line>).
inline std::vector<TestCase> parse_seeds(std::string_view text) {
  std::vector<TestCase> seeds;
  std::size_t pos = 0;
  std::size_t lineno = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    TestCase c;
    if (const auto tab = line.find('\t'); tab != std::string::npos) {
      c.id = line.substr(0, tab);
      c.text = line.substr(tab + 1);
    } else {
      c.id = "s" + std::to_string(lineno);
      c.text = line;
    }
    c.root_id = c.id;
    seeds.push_back(std::move(c));
  }
  return seeds;
}

inline std::vector<TestCase> load_seeds(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open seed file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_seeds(ss.str());
}

/// Runs the campaign. Iteration i draws its mutation from
/// derive_seed(derive_seed(rng_seed, i), 0) and its enqueue coin (random
/// mode) from derive_seed(derive_seed(rng_seed, i), 1).
inline CampaignResult run_cgt(const std::vector<TestCase>& seeds, ModelRunner& model, Judge& judge,
                              std::shared_ptr<const CalibrationBounds> bounds, const CampaignOptions& options,
                              const SynonymProvider& synonyms) {
  if (seeds.empty()) throw Error(ErrorKind::Domain, "campaign needs at least one seed");
  if (options.mutations_per_step < 1) throw Error(ErrorKind::Config, "mutations_per_step must be >= 1");
  if (!(model.topology() == bounds->topology))
    throw Error(ErrorKind::Topology, "runner topology differs from the calibration bounds");

  CampaignResult result{{}, {}, CoverageState(std::move(bounds), options.config), options.budget, 0, 0};
  std::deque<TestCase> queue(seeds.begin(), seeds.end());

  for (std::uint64_t i = 1; i <= options.budget; ++i) {
    IterationRecord rec;
    rec.i = i;
    if (queue.empty()) {
      queue.assign(seeds.begin(), seeds.end());
      rec.refilled = true;
      ++result.refills;
    }
    TestCase parent = std::move(queue.front());
    queue.pop_front();

    const std::uint64_t iter_seed = derive_seed(options.rng_seed, i);
    MutationResult mutation = mutate_random(parent.text, derive_seed(iter_seed, 0), synonyms, options.mutations_per_step);
    TestCase child{"m" + std::to_string(i), std::move(mutation.text), parent.id, parent.root_id};
    rec.case_id = child.id;
    rec.parent_id = parent.id;
    rec.mutations = std::move(mutation.applied);

    Generation gen;
    try {
      gen = model.generate(child.text, child.id);
    } catch (const std::exception& e) {
      rec.verdict = VerdictKind::Unknown;
      rec.rationale = std::string("runner: ") + e.what();
      ++result.unknown;
      result.log.push_back(std::move(rec));
      continue;
    }

    Verdict verdict;
    try {
      verdict = judge.assess(child, gen.response);
    } catch (const std::exception& e) {
      verdict = {VerdictKind::Unknown, std::string("judge: ") + e.what()};
    }
    rec.verdict = verdict.kind;
    rec.rationale = std::move(verdict.rationale);

    bool consider_enqueue = verdict.kind == VerdictKind::Pass;
    if (verdict.kind == VerdictKind::Defect) {
      result.defects.push_back(child);
      consider_enqueue = options.reenqueue_defects;
    } else if (verdict.kind == VerdictKind::Unknown) {
      ++result.unknown;
    }

    if (consider_enqueue) {
      try {
        const TraceFootprint fp = result.state.footprint(gen.trace);
        if (options.mode == EnqueueMode::Guided) {
          const std::size_t gain = result.state.gain(fp, options.criterion);
          if (gain > 0) {
            result.state.apply(fp);
            rec.coverage_gain = gain;
            rec.enqueued = true;
          }
        } else {
          SplitMix64 coin(derive_seed(iter_seed, 1));
          if (coin.coin(options.random_enqueue_probability)) {
            rec.coverage_gain = result.state.apply(fp)[criterion_index(options.criterion)];
            rec.enqueued = true;
          }
        }
      } catch (const Error& e) {
        rec.rationale += std::string("; trace rejected: ") + e.what();
      }
      if (rec.enqueued) queue.push_back(child);
    }
    result.log.push_back(std::move(rec));
  }
  return result;
}

/// Structured campaign report with per-iteration records and the summary.
inline nlohmann::ordered_json campaign_report(const CampaignResult& r, const CampaignOptions& options,
                                              std::size_t seed_count) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["kind"] = "campaign";
  j["criterion"] = std::string(criterion_name(options.criterion));
  j["mode"] = options.mode == EnqueueMode::Guided ? "guided" : "random";
  j["budget"] = options.budget;
  j["rng_seed"] = options.rng_seed;
  j["seeds"] = seed_count;
  j["config"] = ordered_json{{"k", options.config.k_sections},
                             {"h", options.config.h_threshold},
                             {"itnc_k", options.config.itnc_k},
                             {"fhnc_r", options.config.fhnc_r},
                             {"mutations_per_step", options.mutations_per_step},
                             {"reenqueue_defects", options.reenqueue_defects}};
  ordered_json iters = ordered_json::array();
  for (const auto& rec : r.log) {
    ordered_json it;
    it["i"] = rec.i;
    it["case"] = rec.case_id;
    it["parent"] = rec.parent_id;
    ordered_json ops = ordered_json::array();
    for (const auto& m : rec.mutations) ops.push_back(std::string(mutation_op_name(m.op)));
    it["ops"] = ops;
    it["verdict"] = std::string(verdict_name(rec.verdict));
    it["rationale"] = rec.rationale;
    it["coverage_gain"] = rec.coverage_gain;
    it["enqueued"] = rec.enqueued;
    if (rec.refilled) it["refilled"] = true;
    iters.push_back(std::move(it));
  }
  j["iterations"] = std::move(iters);
  ordered_json defects = ordered_json::array();
  for (const auto& d : r.defects)
    defects.push_back(ordered_json{{"id", d.id}, {"parent", d.parent_id}, {"root", d.root_id}, {"text", d.text}});
  j["defects"] = std::move(defects);
  ordered_json cov;
  for (const CriterionId c : kAllCriteria) cov[std::string(criterion_name(c))] = r.state.value(c);
  j["summary"] = ordered_json{{"defects", r.defects.size()}, {"tsr", r.tsr()},     {"unknown", r.unknown},
                              {"refills", r.refills},        {"coverage", cov}};
  return j;
}

}  // namespace lecov

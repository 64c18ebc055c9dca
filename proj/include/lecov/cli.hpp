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

// The `lecov` command line: calibrate, measure, prioritize, fuzz, report.
// Commands exchange files only. Exit status: 0 success, 1 usage error,
// 2 data error, 3 runner or judge failure.

#pragma once

#include <unistd.h>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "lecov/calibration.hpp"
#include "lecov/coverage.hpp"
#include "lecov/error.hpp"
#include "lecov/harness.hpp"
#include "lecov/prioritizer.hpp"
#include "lecov/report.hpp"
#include "lecov/runner.hpp"
#include "lecov/trace_io.hpp"

namespace lecov::cli {

enum class Command { Calibrate, Measure, Prioritize, Fuzz, Report };

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kRunner = 3 };

struct CommandPlan {
  Command command = Command::Report;
  std::vector<std::string> traces;
  std::string bounds;
  std::string out;
  std::string in;
  CriteriaConfig config;
  std::optional<CriterionId> criterion;  // nullopt with `all`
  std::optional<double> trim_percent;
  int jobs = 1;
  // prioritize
  double budget_fraction = 1.0;
  std::optional<std::string> labels;
  bool greedy = false;
  // fuzz
  std::string seeds;
  std::uint64_t budget = 0;
  std::string runner;
  std::string judge;
  std::uint64_t rng_seed = 0;
  bool random_enqueue = false;
  bool reenqueue_defects = false;
  int mutations_per_step = 1;
  std::optional<std::string> synonyms;
  int timeout_seconds = 120;
  int max_steps = 0;
};

/// Bad command line. `exit_code` is 0 for --help.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& message, int exit_code = kUsage)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

namespace detail {

inline void add_criteria_flags(CLI::App* cmd, CriteriaConfig& cfg) {
  cmd->add_option("--k", cfg.k_sections, "Sections per k-multisection criterion")->check(CLI::PositiveNumber);
  cmd->add_option("--h", cfg.h_threshold, "Activation threshold for IHNC/FHNC");
  cmd->add_option("--itnc-k", cfg.itnc_k, "Top-k rank for ITNC")->check(CLI::PositiveNumber);
  cmd->add_option("--fhnc-r", cfg.fhnc_r, "Activation count bound for FHNC")->check(CLI::NonNegativeNumber);
}

inline std::optional<CriterionId> parse_criterion_arg(const std::string& s, bool allow_all) {
  if (s == "all" || s == "ALL") {
    if (!allow_all) throw UsageError("--criterion all is only valid for measure");
    return std::nullopt;
  }
  if (auto c = parse_criterion(s)) return c;
  throw UsageError("unknown criterion '" + s + "'");
}

}  // namespace detail

/// Parses a full argument vector (args[0] is the program name).
inline CommandPlan parse(const std::vector<std::string>& args) {
  CommandPlan plan;
  CLI::App app{"Multi-level coverage criteria for generative language models", "lecov"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  std::string criterion;

  auto* calibrate = app.add_subcommand("calibrate", "Derive bounds from a profiling corpus");
  calibrate->add_option("--traces,--profile", plan.traces, "Profiling trace files")->required()->check(CLI::ExistingFile);
  calibrate->add_option("--out", plan.out, "Bounds file to write")->required();
  calibrate->add_option("--trim-percent", plan.trim_percent, "Use percentile bounds instead of min/max")
      ->check(CLI::Range(0.0, 49.999));

  auto* measure = app.add_subcommand("measure", "Coverage of a trace corpus");
  measure->add_option("--traces", plan.traces, "Trace files")->required()->check(CLI::ExistingFile);
  measure->add_option("--bounds", plan.bounds, "Bounds file")->required()->check(CLI::ExistingFile);
  measure->add_option("--criterion", criterion, "Criterion id or 'all'")->required();
  measure->add_option("--out", plan.out, "Report file to write")->required();
  measure->add_option("--jobs", plan.jobs, "Worker threads")->check(CLI::Range(1, 256));
  detail::add_criteria_flags(measure, plan.config);

  auto* prioritize = app.add_subcommand("prioritize", "Rank test cases by coverage");
  prioritize->add_option("--traces", plan.traces, "Trace file")->required()->check(CLI::ExistingFile);
  prioritize->add_option("--bounds", plan.bounds, "Bounds file")->required()->check(CLI::ExistingFile);
  prioritize->add_option("--criterion", criterion, "Criterion id")->required();
  prioritize->add_option("--budget-fraction", plan.budget_fraction, "Fraction of the pool to select")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  prioritize->add_option("--labels", plan.labels, "prompt_id<TAB>{0|1} defect labels")->check(CLI::ExistingFile);
  prioritize->add_flag("--greedy", plan.greedy, "Score by marginal gain over the selected prefix");
  prioritize->add_option("--out", plan.out, "Report file to write")->required();
  detail::add_criteria_flags(prioritize, plan.config);

  auto* fuzz = app.add_subcommand("fuzz", "Coverage-guided testing campaign");
  fuzz->add_option("--seeds", plan.seeds, "Seed prompts")->required()->check(CLI::ExistingFile);
  fuzz->add_option("--budget", plan.budget, "Number of model invocations")->required();
  fuzz->add_option("--runner", plan.runner, "Runner command, or 'builtin' for the in-process reference model")
      ->required();
  fuzz->add_option("--judge", plan.judge, "keyword:<w1,w2,...> or exactmatch:<path>")->required();
  fuzz->add_option("--criterion", criterion, "Guiding criterion")->required();
  fuzz->add_option("--bounds", plan.bounds, "Bounds file")->required()->check(CLI::ExistingFile);
  fuzz->add_option("--rng-seed", plan.rng_seed, "Master seed")->required();
  fuzz->add_option("--out", plan.out, "Report file to write")->required();
  auto* random_flag = fuzz->add_flag("--random-enqueue", plan.random_enqueue, "Coin flip instead of coverage feedback");
  fuzz->add_flag("--reenqueue-defects", plan.reenqueue_defects, "Let defect cases enter the seed queue")
      ->excludes(random_flag);
  fuzz->add_option("--mutations-per-step", plan.mutations_per_step, "Operators applied per mutant")
      ->check(CLI::Range(1, 64));
  fuzz->add_option("--synonyms", plan.synonyms, "Synonym list replacing the embedded one")->check(CLI::ExistingFile);
  fuzz->add_option("--timeout", plan.timeout_seconds, "Runner reply timeout in seconds")->check(CLI::PositiveNumber);
  fuzz->add_option("--max-steps", plan.max_steps, "Generation length requested from the runner")
      ->check(CLI::NonNegativeNumber);
  detail::add_criteria_flags(fuzz, plan.config);

  auto* report = app.add_subcommand("report", "Render a report for humans");
  report->add_option("--in", plan.in, "Report file")->required()->check(CLI::ExistingFile);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help(), kOk);
  } catch (const CLI::CallForAllHelp&) {
    throw UsageError(app.help("", CLI::AppFormatMode::All), kOk);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (calibrate->parsed()) {
    plan.command = Command::Calibrate;
  } else if (measure->parsed()) {
    plan.command = Command::Measure;
    plan.criterion = detail::parse_criterion_arg(criterion, true);
  } else if (prioritize->parsed()) {
    plan.command = Command::Prioritize;
    plan.criterion = detail::parse_criterion_arg(criterion, false);
    if (!(plan.budget_fraction > 0.0)) throw UsageError("--budget-fraction must lie in (0, 1]");
  } else if (fuzz->parsed()) {
    plan.command = Command::Fuzz;
    plan.criterion = detail::parse_criterion_arg(criterion, false);
    if (plan.judge.rfind("keyword:", 0) != 0 && plan.judge.rfind("exactmatch:", 0) != 0)
      throw UsageError("--judge must be keyword:<words> or exactmatch:<path>");
    if (plan.judge.rfind("exactmatch:", 0) == 0 && !std::filesystem::exists(plan.judge.substr(11)))
      throw UsageError("expected-answer file does not exist: " + plan.judge.substr(11));
  } else {
    plan.command = Command::Report;
  }
  try {
    plan.config.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return plan;
}

/// Writes `content` to a temporary sibling and renames it over `path`.
inline void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot move report into place at " + path);
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::map<std::string, int> load_labels(const std::string& path) {
  std::map<std::string, int> labels;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    const std::string value = tab == std::string::npos ? "" : line.substr(tab + 1);
    if (value != "0" && value != "1")
      throw Error(ErrorKind::Syntax, path + ":" + std::to_string(lineno) + ": expected prompt_id<TAB>{0|1}");
    labels[line.substr(0, tab)] = value == "1" ? 1 : 0;
  }
  return labels;
}

inline std::vector<GenerationTrace> read_traces(const std::vector<std::string>& paths) {
  std::vector<GenerationTrace> traces;
  for (const auto& p : paths) {
    auto part = read_trace_file(p);
    for (auto& t : part) traces.push_back(std::move(t));
  }
  return traces;
}

inline std::string dump_report(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

/// Ingest `traces` on `jobs` private states (round-robin shards) and merge.
inline CoverageState measure_sharded(const CoverageState& fresh, const std::vector<GenerationTrace>& traces, int jobs) {
  if (jobs <= 1 || traces.size() < 2) return ingest_all(fresh, traces);
  const auto n = static_cast<std::size_t>(jobs);
  std::vector<CoverageState> shards(n, fresh);
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < n; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < traces.size(); i += n) shards[w].ingest(traces[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  CoverageState out = shards[0];
  for (std::size_t w = 1; w < n; ++w) out.merge(shards[w]);
  return out;
}

inline int run_calibrate(const CommandPlan& plan) {
  BoundsProfiler profiler(ProfileOptions{plan.trim_percent});
  std::size_t count = 0;
  for (const auto& path : plan.traces) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open trace file " + path);
    count += for_each_trace(in, [&profiler](GenerationTrace&& t) { profiler.add(t); }, path);
  }
  if (count == 0) throw Error(ErrorKind::Domain, "profiling corpus is empty");
  const CalibrationBounds bounds = profiler.finish();
  write_atomic(plan.out, save_bounds(bounds));
  spdlog::info("calibrated {} trace(s); {} degenerate key(s)", count, bounds.flagged_keys().size());
  return kOk;
}

inline int run_measure(const CommandPlan& plan) {
  const auto bounds = std::make_shared<const CalibrationBounds>(load_bounds(read_file(plan.bounds)));
  const auto traces = read_traces(plan.traces);
  if (traces.empty()) throw Error(ErrorKind::Domain, "no traces to measure");
  const CoverageState state = measure_sharded(CoverageState(bounds, plan.config), traces, plan.jobs);
  write_atomic(plan.out, dump_report(coverage_report(state, plan.criterion)));
  spdlog::info("measured {} trace(s)", traces.size());
  return kOk;
}

inline int run_prioritize(const CommandPlan& plan) {
  const auto bounds = std::make_shared<const CalibrationBounds>(load_bounds(read_file(plan.bounds)));
  const auto traces = read_traces(plan.traces);
  if (traces.empty()) throw Error(ErrorKind::Domain, "no traces to prioritize");
  const CoverageState fresh(bounds, plan.config);
  const CriterionId criterion = *plan.criterion;
  std::vector<std::pair<std::string, double>> scores;
  if (plan.greedy) {
    scores = greedy_marginal_scores(traces, fresh, criterion);
  } else {
    for (const auto& t : traces) scores.emplace_back(t.prompt_id, score_case(t, fresh, criterion));
  }
  const auto scored = normalize_scores(scores);
  const auto selected = rank(scores, plan.budget_fraction);
  std::optional<PrioritizationReport> evaluation;
  if (plan.labels) evaluation = evaluate(scored, load_labels(*plan.labels), plan.budget_fraction);
  write_atomic(plan.out, dump_report(prioritization_report(criterion, plan.config, plan.greedy, scored,
                                                           plan.budget_fraction, selected, evaluation)));
  return kOk;
}

inline std::unique_ptr<Judge> make_judge(const std::string& spec) {
  if (spec.rfind("keyword:", 0) == 0) {
    std::vector<std::string> words;
    std::stringstream ss(spec.substr(8));
    std::string w;
    while (std::getline(ss, w, ','))
      if (!w.empty()) words.push_back(w);
    if (words.empty()) throw Error(ErrorKind::Config, "keyword judge needs at least one keyword");
    return std::make_unique<KeywordJudge>(std::move(words));
  }
  return std::make_unique<ExactMatchJudge>(ExactMatchJudge::load_file(spec.substr(11)));
}

inline int run_fuzz(const CommandPlan& plan) {
  const auto bounds = std::make_shared<const CalibrationBounds>(load_bounds(read_file(plan.bounds)));
  const auto seeds = load_seeds(plan.seeds);
  if (seeds.empty()) throw Error(ErrorKind::Domain, "seed file holds no prompts");
  const SynonymProvider synonyms = plan.synonyms ? SynonymProvider::load_file(*plan.synonyms) : SynonymProvider::embedded();
  auto judge = make_judge(plan.judge);

  std::unique_ptr<ModelRunner> runner;
  if (plan.runner == "builtin") {
    RefModelConfig cfg;
    if (plan.max_steps > 0) cfg.max_steps = plan.max_steps;
    runner = std::make_unique<RefModelRunner>(cfg);
  } else {
    runner = std::make_unique<ChildProcessRunner>(plan.runner, std::chrono::seconds(plan.timeout_seconds), plan.max_steps);
  }

  CampaignOptions options;
  options.budget = plan.budget;
  options.criterion = *plan.criterion;
  options.config = plan.config;
  options.rng_seed = plan.rng_seed;
  options.mode = plan.random_enqueue ? EnqueueMode::Random : EnqueueMode::Guided;
  options.reenqueue_defects = plan.reenqueue_defects;
  options.mutations_per_step = plan.mutations_per_step;

  const CampaignResult result = run_cgt(seeds, *runner, *judge, bounds, options, synonyms);
  write_atomic(plan.out, dump_report(campaign_report(result, options, seeds.size())));
  spdlog::info("campaign: {} defect(s) in {} iteration(s)", result.defects.size(), result.budget);
  if (result.budget > 0 && result.unknown == result.budget) {
    spdlog::error("every iteration failed in the runner or judge");
    return kRunner;
  }
  return kOk;
}

inline int run_report(const CommandPlan& plan, std::ostream& out) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(read_file(plan.in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, std::string("report: ") + e.what());
  }
  try {
    out << render_report(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, std::string("report: ") + e.what());
  }
  return kOk;
}

inline int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Protocol:
    case ErrorKind::Judge: return kRunner;
    default: return kData;
  }
}

inline int execute(const CommandPlan& plan, std::ostream& out = std::cout) {
  try {
    switch (plan.command) {
      case Command::Calibrate: return run_calibrate(plan);
      case Command::Measure: return run_measure(plan);
      case Command::Prioritize: return run_prioritize(plan);
      case Command::Fuzz: return run_fuzz(plan);
      case Command::Report: return run_report(plan, out);
    }
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return exit_code_for(e.kind());
  }
  return kOk;
}

/// LECOV_LOG: trace, debug, info, warn, error, critical or off.
inline void configure_logging() {
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("LECOV_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

inline int main(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  configure_logging();
  std::vector<std::string> args(argv, argv + argc);
  CommandPlan plan;
  try {
    plan = parse(args);
  } catch (const UsageError& e) {
    (e.exit_code() == kOk ? out : err) << e.what() << '\n';
    return e.exit_code();
  }
  return execute(plan, out);
}

}  // namespace lecov::cli

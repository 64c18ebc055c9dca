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
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lecov/error.hpp"
#include "lecov/stats.hpp"
#include "lecov/trace.hpp"
#include "lecov/trace_io.hpp"

namespace lecov {

inline constexpr std::string_view kBoundsSchemaVersion = "lecov-bounds/1";

struct Interval {
  double lb = 0.0;
  double ub = 0.0;
  std::uint64_t count = 0;  // observations behind the interval

  bool degenerate() const noexcept { return count == 0 || lb == ub; }
  bool operator==(const Interval&) const = default;
};

/// [LB, UB] for every (attention head, measure) plus the global entropy and
/// likelihood ranges, all derived from a profiling corpus.
struct CalibrationBounds {
  Topology topology;
  std::uint64_t traces = 0;
  std::vector<std::array<Interval, 4>> heads;  // by Topology::head_index
  Interval entropy;
  Interval likelihood;

  const Interval& head(std::size_t head_index, Measure m) const { return heads.at(head_index)[measure_index(m)]; }
  Interval& head(std::size_t head_index, Measure m) { return heads.at(head_index)[measure_index(m)]; }

  /// Keys whose interval is empty or collapsed to a point.
  std::vector<std::string> flagged_keys() const;

  bool operator==(const CalibrationBounds&) const = default;
};

inline std::string head_key(int layer, int head, Measure m) {
  return "L" + std::to_string(layer) + ".H" + std::to_string(head) + "." + std::string(measure_key(m));
}

inline std::vector<std::string> CalibrationBounds::flagged_keys() const {
  std::vector<std::string> out;
  for (int l = 0; l < topology.layers; ++l)
    for (int h = 0; h < topology.heads_per_layer; ++h)
      for (const Measure m : kAllMeasures)
        if (head(topology.head_index(l, h), m).degenerate()) out.push_back(head_key(l, h, m));
  if (entropy.degenerate()) out.emplace_back("entropy");
  return out;
}

struct ProfileOptions {
  /// When set (e.g. 0.5), bounds are the p-th and (100-p)-th percentiles
  /// instead of min/max. Requires buffering every observation.
  std::optional<double> trim_percent;
};

/// Fold over a profiling corpus. Min/max profiles merge elementwise, so
/// partial profiles built on separate workers can be combined.
class BoundsProfiler {
 public:
  explicit BoundsProfiler(ProfileOptions options = {}) : options_(options) {
    if (options_.trim_percent && !(*options_.trim_percent >= 0.0 && *options_.trim_percent < 50.0))
      throw Error(ErrorKind::Config, "trim percent must lie in [0, 50)");
  }

  void add(const GenerationTrace& trace) {
    if (!topology_) {
      topology_ = trace.topology;
      const std::size_t n = trace.topology.num_heads();
      heads_.assign(n, {});
      if (options_.trim_percent) head_samples_.assign(n, {});
    } else if (!(*topology_ == trace.topology)) {
      throw Error(ErrorKind::Topology, "profiling corpus mixes topologies (trace '" + trace.prompt_id + "')");
    }
    ++traces_;
    for (const auto& step : trace.steps) {
      for (const auto& hs : step.heads) {
        const std::size_t idx = topology_->head_index(hs.layer, hs.head);
        for (const Measure m : kAllMeasures) {
          observe(heads_[idx][measure_index(m)], hs.get(m));
          if (options_.trim_percent) head_samples_[idx][measure_index(m)].push_back(hs.get(m));
        }
      }
      observe(entropy_, step.entropy);
      if (options_.trim_percent) entropy_samples_.push_back(step.entropy);
      ++likelihood_count_;
    }
  }

  void merge(const BoundsProfiler& other) {
    if (options_.trim_percent || other.options_.trim_percent)
      throw Error(ErrorKind::Config, "percentile profiles cannot be merged");
    if (!other.topology_) return;
    if (!topology_) {
      *this = other;
      return;
    }
    if (!(*topology_ == *other.topology_)) throw Error(ErrorKind::Topology, "merging profiles of different topologies");
    traces_ += other.traces_;
    for (std::size_t i = 0; i < heads_.size(); ++i)
      for (std::size_t m = 0; m < 4; ++m) combine(heads_[i][m], other.heads_[i][m]);
    combine(entropy_, other.entropy_);
    likelihood_count_ += other.likelihood_count_;
  }

  CalibrationBounds finish() const {
    if (!topology_) throw Error(ErrorKind::Domain, "empty profiling corpus");
    CalibrationBounds b;
    b.topology = *topology_;
    b.traces = traces_;
    b.heads.resize(heads_.size());
    for (std::size_t i = 0; i < heads_.size(); ++i) {
      for (std::size_t m = 0; m < 4; ++m) {
        Interval iv = finalize(heads_[i][m]);
        if (options_.trim_percent && iv.count > 0) trim(iv, head_samples_[i][m]);
        b.heads[i][m] = iv;
      }
    }
    b.entropy = finalize(entropy_);
    if (options_.trim_percent && b.entropy.count > 0) trim(b.entropy, entropy_samples_);
    if (b.entropy.count == 0) b.entropy.lb = 0.0;
    b.entropy.ub = std::max(b.entropy.ub, std::log(static_cast<double>(topology_->vocab_size)));
    b.likelihood = {0.0, 1.0, likelihood_count_};
    return b;
  }

 private:
  struct Acc {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::uint64_t n = 0;
  };

  static void observe(Acc& a, double v) {
    a.lo = std::min(a.lo, v);
    a.hi = std::max(a.hi, v);
    ++a.n;
  }
  static void combine(Acc& a, const Acc& b) {
    a.lo = std::min(a.lo, b.lo);
    a.hi = std::max(a.hi, b.hi);
    a.n += b.n;
  }
  static Interval finalize(const Acc& a) {
    if (a.n == 0) return {0.0, 0.0, 0};
    return {a.lo, a.hi, a.n};
  }
  void trim(Interval& iv, std::vector<double> samples) const {
    std::sort(samples.begin(), samples.end());
    const double p = *options_.trim_percent / 100.0;
    const auto last = static_cast<double>(samples.size() - 1);
    iv.lb = samples[static_cast<std::size_t>(std::floor(p * last))];
    iv.ub = samples[static_cast<std::size_t>(std::ceil((1.0 - p) * last))];
  }

  ProfileOptions options_;
  std::optional<Topology> topology_;
  std::uint64_t traces_ = 0;
  std::vector<std::array<Acc, 4>> heads_;
  Acc entropy_;
  std::uint64_t likelihood_count_ = 0;
  std::vector<std::array<std::vector<double>, 4>> head_samples_;
  std::vector<double> entropy_samples_;
};

/// Bounds of a corpus: per key min/max over every step of every trace;
/// entropy UB is at least ln(vocab_size); likelihood is fixed to [0,1].
template <typename Range>
CalibrationBounds profile_bounds(const Range& traces, ProfileOptions options = {}) {
  BoundsProfiler profiler(options);
  for (const GenerationTrace& t : traces) profiler.add(t);
  return profiler.finish();
}

namespace detail {

inline std::string format_real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void append_interval(std::string& out, std::string_view key, const Interval& iv, bool last) {
  out += "    ";
  append_json_string(out, key);
  out += ": {\"lb\": " + format_real17(iv.lb) + ", \"ub\": " + format_real17(iv.ub) +
         ", \"n\": " + std::to_string(iv.count) + "}";
  out += last ? "\n" : ",\n";
}

inline Interval interval_from_json(const nlohmann::json& j, const std::string& key) {
  const std::string where = "bounds." + key;
  Interval iv;
  iv.lb = get_real(j, "lb", where);
  iv.ub = get_real(j, "ub", where);
  const json& n = field(j, "n", where);
  if (!n.is_number_unsigned() && !(n.is_number_integer() && n.get<std::int64_t>() >= 0))
    syntax_error(where + ".n must be a non-negative integer");
  iv.count = n.get<std::uint64_t>();
  if (!std::isfinite(iv.lb) || !std::isfinite(iv.ub) || iv.lb > iv.ub)
    throw Error(ErrorKind::Invariant, where + " has lb > ub or non-finite bounds");
  return iv;
}

}  // namespace detail

/// Deterministic text form; reals use 17 significant digits so loading
/// restores every bound exactly.
inline std::string save_bounds(const CalibrationBounds& b) {
  std::string out = "{\n  \"version\": ";
  detail::append_json_string(out, kBoundsSchemaVersion);
  out += ",\n  \"topology\": ";
  detail::append_topology(out, b.topology);
  out += ",\n  \"traces\": " + std::to_string(b.traces);
  out += ",\n  \"bounds\": {\n";
  for (int l = 0; l < b.topology.layers; ++l)
    for (int h = 0; h < b.topology.heads_per_layer; ++h)
      for (const Measure m : kAllMeasures)
        detail::append_interval(out, head_key(l, h, m), b.head(b.topology.head_index(l, h), m), false);
  detail::append_interval(out, "entropy", b.entropy, false);
  detail::append_interval(out, "likelihood", b.likelihood, true);
  out += "  }\n}\n";
  return out;
}

inline CalibrationBounds load_bounds(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, std::string("bounds: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Syntax, "bounds document is not an object");
  const std::string version = detail::get_string(j, "version", "bounds");
  if (version != kBoundsSchemaVersion)
    throw Error(ErrorKind::Version, "bounds schema '" + version + "', expected '" +
                                        std::string(kBoundsSchemaVersion) + "'");
  CalibrationBounds b;
  b.topology = detail::topology_from_json(detail::field(j, "topology", "bounds"), "bounds.topology");
  if (b.topology.layers < 1 || b.topology.heads_per_layer < 0 || b.topology.neurons_per_layer < 1 ||
      b.topology.vocab_size < 1)
    throw Error(ErrorKind::Invariant, "bounds topology is not valid");
  const auto& traces = detail::field(j, "traces", "bounds");
  if (!traces.is_number_integer() || traces.get<std::int64_t>() < 0)
    throw Error(ErrorKind::Syntax, "bounds.traces must be a non-negative integer");
  b.traces = traces.get<std::uint64_t>();
  const auto& entries = detail::field(j, "bounds", "bounds");
  b.heads.resize(b.topology.num_heads());
  for (int l = 0; l < b.topology.layers; ++l)
    for (int h = 0; h < b.topology.heads_per_layer; ++h)
      for (const Measure m : kAllMeasures) {
        const std::string key = head_key(l, h, m);
        b.head(b.topology.head_index(l, h), m) =
            detail::interval_from_json(detail::field(entries, key.c_str(), "bounds"), key);
      }
  b.entropy = detail::interval_from_json(detail::field(entries, "entropy", "bounds"), "entropy");
  b.likelihood = detail::interval_from_json(detail::field(entries, "likelihood", "bounds"), "likelihood");
  return b;
}

}  // namespace lecov

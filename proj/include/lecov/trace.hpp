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
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lecov/stats.hpp"

namespace lecov {

/// Shape of the model a trace was recorded from.
struct Topology {
  int layers = 0;
  int heads_per_layer = 0;
  int neurons_per_layer = 0;
  int vocab_size = 0;

  std::size_t num_heads() const noexcept {
    return static_cast<std::size_t>(layers) * static_cast<std::size_t>(heads_per_layer);
  }
  std::size_t num_neurons() const noexcept {
    return static_cast<std::size_t>(layers) * static_cast<std::size_t>(neurons_per_layer);
  }
  std::size_t head_index(int layer, int head) const noexcept {
    return static_cast<std::size_t>(layer) * static_cast<std::size_t>(heads_per_layer) +
           static_cast<std::size_t>(head);
  }
  std::size_t neuron_index(int layer, int neuron) const noexcept {
    return static_cast<std::size_t>(layer) * static_cast<std::size_t>(neurons_per_layer) +
           static_cast<std::size_t>(neuron);
  }

  bool operator==(const Topology&) const = default;
};

/// The four statistics of one attention head's output at one step.
struct HeadStat {
  int layer = 0;
  int head = 0;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;

  double get(Measure m) const noexcept {
    switch (m) {
      case Measure::Mean: return mean;
      case Measure::Variance: return variance;
      case Measure::Kurtosis: return kurtosis;
      case Measure::Skewness: return skewness;
    }
    return 0.0;
  }

  bool operator==(const HeadStat&) const = default;
};

struct NeuronActivation {
  int neuron = 0;
  double value = 0.0;

  bool operator==(const NeuronActivation&) const = default;
};

/// Feed-forward neurons of one layer at one step: the sparse set above the
/// trace's recording floor plus a top-K ranking (descending activation,
/// ties by ascending index).
struct LayerActivations {
  int layer = 0;
  std::vector<NeuronActivation> activated;
  std::vector<int> topk;

  bool operator==(const LayerActivations&) const = default;
};

struct StepRecord {
  int t = 0;
  double entropy = 0.0;         // nats
  double avg_likelihood = 0.0;  // running mean chosen-token probability
  std::vector<HeadStat> heads;
  std::vector<LayerActivations> layers;

  bool operator==(const StepRecord&) const = default;
};

struct GenerationTrace {
  std::string prompt_id;
  std::string prompt_text;
  std::string output_text;
  Topology topology;
  double recording_floor = 0.0;
  std::vector<StepRecord> steps;

  bool operator==(const GenerationTrace&) const = default;
};

inline constexpr double kDefaultRecordingFloor = 0.0;
inline constexpr int kDefaultTopK = 16;

/// Length of the per-layer top-K lists (all equal in a valid trace), or
/// nullopt when the trace holds no layer records.
inline std::optional<int> trace_kmax(const GenerationTrace& trace) {
  for (const auto& step : trace.steps)
    for (const auto& layer : step.layers) return static_cast<int>(layer.topk.size());
  return std::nullopt;
}

struct Violation {
  std::string where;  // e.g. "steps[3].heads[1]"
  std::string what;

  std::string str() const { return where.empty() ? what : where + ": " + what; }
  bool operator==(const Violation&) const = default;
};

namespace detail {

inline std::string step_where(std::size_t s) { return "steps[" + std::to_string(s) + "]"; }

inline bool finite(double v) noexcept { return std::isfinite(v); }

}  // namespace detail

/// Every invariant violation of `trace`; empty iff the trace is valid.
inline std::vector<Violation> validate_trace(const GenerationTrace& trace) {
  std::vector<Violation> out;
  auto fail = [&out](std::string where, std::string what) {
    out.push_back({std::move(where), std::move(what)});
  };

  const Topology& topo = trace.topology;
  if (topo.layers < 1) fail("topology", "layers must be >= 1");
  if (topo.heads_per_layer < 0) fail("topology", "heads_per_layer must be >= 0");
  if (topo.neurons_per_layer < 1) fail("topology", "neurons_per_layer must be >= 1");
  if (topo.vocab_size < 1) fail("topology", "vocab_size must be >= 1");
  if (!detail::finite(trace.recording_floor)) fail("recording_floor", "must be finite");
  if (!out.empty()) return out;

  std::optional<std::size_t> kmax;
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const StepRecord& step = trace.steps[s];
    const std::string where = detail::step_where(s);
    if (step.t != static_cast<int>(s))
      fail(where + ".t", "expected t=" + std::to_string(s) + ", got " + std::to_string(step.t));
    if (!detail::finite(step.entropy) || step.entropy < 0.0)
      fail(where + ".entropy", "must be finite and >= 0");
    if (!detail::finite(step.avg_likelihood) || step.avg_likelihood < 0.0 || step.avg_likelihood > 1.0)
      fail(where + ".avg_likelihood", "must lie in [0,1], got " + std::to_string(step.avg_likelihood));

    std::set<std::pair<int, int>> seen_heads;
    for (std::size_t h = 0; h < step.heads.size(); ++h) {
      const HeadStat& hs = step.heads[h];
      const std::string hw = where + ".heads[" + std::to_string(h) + "]";
      if (hs.layer < 0 || hs.layer >= topo.layers || hs.head < 0 || hs.head >= topo.heads_per_layer) {
        fail(hw, "head L" + std::to_string(hs.layer) + ".H" + std::to_string(hs.head) + " outside topology");
        continue;
      }
      if (!seen_heads.insert({hs.layer, hs.head}).second) fail(hw, "duplicate head");
      if (!detail::finite(hs.mean) || !detail::finite(hs.variance) || !detail::finite(hs.skewness) ||
          !detail::finite(hs.kurtosis))
        fail(hw, "non-finite statistic");
      else if (hs.variance < 0.0)
        fail(hw + ".var", "must be >= 0");
    }

    std::set<int> seen_layers;
    for (std::size_t l = 0; l < step.layers.size(); ++l) {
      const LayerActivations& la = step.layers[l];
      const std::string lw = where + ".layers[" + std::to_string(l) + "]";
      if (la.layer < 0 || la.layer >= topo.layers) {
        fail(lw, "layer " + std::to_string(la.layer) + " outside topology");
        continue;
      }
      if (!seen_layers.insert(la.layer).second) fail(lw, "duplicate layer");

      std::set<int> seen_ids;
      for (const NeuronActivation& na : la.activated) {
        if (na.neuron < 0 || na.neuron >= topo.neurons_per_layer) {
          fail(lw + ".activated", "neuron " + std::to_string(na.neuron) + " outside layer width");
        } else if (!seen_ids.insert(na.neuron).second) {
          fail(lw + ".activated", "duplicate neuron " + std::to_string(na.neuron));
        }
        if (!detail::finite(na.value) || !(na.value > trace.recording_floor))
          fail(lw + ".activated", "activation of neuron " + std::to_string(na.neuron) +
                                      " not above recording_floor");
      }

      std::set<int> seen_top;
      for (const int id : la.topk) {
        if (id < 0 || id >= topo.neurons_per_layer)
          fail(lw + ".topk", "neuron " + std::to_string(id) + " outside layer width");
        else if (!seen_top.insert(id).second)
          fail(lw + ".topk", "duplicate neuron " + std::to_string(id));
      }
      if (!kmax) {
        kmax = la.topk.size();
      } else if (*kmax != la.topk.size()) {
        fail(lw + ".topk", "length " + std::to_string(la.topk.size()) + " differs from K_max " +
                               std::to_string(*kmax));
      }
    }
  }
  return out;
}

/// Shortest text of `v` at the 9 significant digits used by trace files.
inline std::string format_real9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

/// Rounds `v` to the precision it has after a trace file round-trip.
inline double quantize_real(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_real9(v).c_str(), nullptr);
}

/// Copy of `trace` with every real rounded to its serialized precision.
/// Decoding an encoded trace yields exactly quantize(trace).
inline GenerationTrace quantize(GenerationTrace trace) {
  trace.recording_floor = quantize_real(trace.recording_floor);
  for (auto& step : trace.steps) {
    step.entropy = quantize_real(step.entropy);
    step.avg_likelihood = quantize_real(step.avg_likelihood);
    for (auto& h : step.heads) {
      h.mean = quantize_real(h.mean);
      h.variance = quantize_real(h.variance);
      h.skewness = quantize_real(h.skewness);
      h.kurtosis = quantize_real(h.kurtosis);
    }
    for (auto& l : step.layers)
      for (auto& a : l.activated) a.value = quantize_real(a.value);
  }
  return trace;
}

}  // namespace lecov

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

// Newline-delimited trace files. One JSON object per line, fields in a
// fixed order, reals printed with %.9g, so that decode followed by encode
// reproduces a file byte for byte.

#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lecov/error.hpp"
#include "lecov/trace.hpp"

namespace lecov {

inline constexpr std::string_view kTraceSchemaVersion = "lecov-trace/1";

namespace detail {

inline void append_json_string(std::string& out, std::string_view s) {
  out += nlohmann::json(std::string(s)).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

inline void append_topology(std::string& out, const Topology& topo) {
  out += "{\"layers\":" + std::to_string(topo.layers);
  out += ",\"heads_per_layer\":" + std::to_string(topo.heads_per_layer);
  out += ",\"neurons_per_layer\":" + std::to_string(topo.neurons_per_layer);
  out += ",\"vocab_size\":" + std::to_string(topo.vocab_size);
  out += '}';
}

}  // namespace detail

/// Canonical single-line encoding (no trailing newline).
inline std::string encode_trace(const GenerationTrace& trace) {
  std::string out;
  out.reserve(256 + trace.steps.size() * 512);
  out += "{\"version\":";
  detail::append_json_string(out, kTraceSchemaVersion);
  out += ",\"prompt_id\":";
  detail::append_json_string(out, trace.prompt_id);
  out += ",\"prompt_text\":";
  detail::append_json_string(out, trace.prompt_text);
  out += ",\"output_text\":";
  detail::append_json_string(out, trace.output_text);
  out += ",\"topology\":";
  detail::append_topology(out, trace.topology);
  out += ",\"recording_floor\":" + format_real9(trace.recording_floor);
  out += ",\"steps\":[";
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const StepRecord& step = trace.steps[s];
    if (s) out += ',';
    out += "{\"t\":" + std::to_string(step.t);
    out += ",\"entropy\":" + format_real9(step.entropy);
    out += ",\"avg_likelihood\":" + format_real9(step.avg_likelihood);
    out += ",\"heads\":[";
    for (std::size_t h = 0; h < step.heads.size(); ++h) {
      const HeadStat& hs = step.heads[h];
      if (h) out += ',';
      out += "{\"layer\":" + std::to_string(hs.layer);
      out += ",\"head\":" + std::to_string(hs.head);
      out += ",\"mean\":" + format_real9(hs.mean);
      out += ",\"var\":" + format_real9(hs.variance);
      out += ",\"skew\":" + format_real9(hs.skewness);
      out += ",\"kurt\":" + format_real9(hs.kurtosis);
      out += '}';
    }
    out += "],\"layers\":[";
    for (std::size_t l = 0; l < step.layers.size(); ++l) {
      const LayerActivations& la = step.layers[l];
      if (l) out += ',';
      out += "{\"layer\":" + std::to_string(la.layer);
      out += ",\"activated\":[";
      for (std::size_t a = 0; a < la.activated.size(); ++a) {
        if (a) out += ',';
        out += '[' + std::to_string(la.activated[a].neuron) + ',' + format_real9(la.activated[a].value) + ']';
      }
      out += "],\"topk\":[";
      for (std::size_t k = 0; k < la.topk.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(la.topk[k]);
      }
      out += "]}";
    }
    out += "]}";
  }
  out += "]}";
  return out;
}

namespace detail {

using nlohmann::json;

[[noreturn]] inline void syntax_error(const std::string& what) { throw Error(ErrorKind::Syntax, what); }

inline const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) syntax_error(where + " is not an object");
  const auto it = obj.find(name);
  if (it == obj.end()) syntax_error(where + " missing field '" + name + "'");
  return *it;
}

inline int get_int(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_number_integer()) syntax_error(where + "." + name + " must be an integer");
  const auto i = v.get<std::int64_t>();
  if (i < INT32_MIN || i > INT32_MAX) syntax_error(where + "." + name + " out of range");
  return static_cast<int>(i);
}

inline int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) syntax_error(where + " must be an integer");
  const auto i = v.get<std::int64_t>();
  if (i < INT32_MIN || i > INT32_MAX) syntax_error(where + " out of range");
  return static_cast<int>(i);
}

inline double as_real(const json& v, const std::string& where) {
  if (!v.is_number()) syntax_error(where + " must be a number");
  return v.get<double>();
}

inline double get_real(const json& obj, const char* name, const std::string& where) {
  return as_real(field(obj, name, where), where + "." + name);
}

inline std::string get_string(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_string()) syntax_error(where + "." + name + " must be a string");
  return v.get<std::string>();
}

inline const json& get_array(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_array()) syntax_error(where + "." + name + " must be an array");
  return v;
}

inline Topology topology_from_json(const json& t, const std::string& where) {
  Topology topo;
  topo.layers = get_int(t, "layers", where);
  topo.heads_per_layer = get_int(t, "heads_per_layer", where);
  topo.neurons_per_layer = get_int(t, "neurons_per_layer", where);
  topo.vocab_size = get_int(t, "vocab_size", where);
  return topo;
}

inline json topology_to_json(const Topology& topo) {
  return json{{"layers", topo.layers},
              {"heads_per_layer", topo.heads_per_layer},
              {"neurons_per_layer", topo.neurons_per_layer},
              {"vocab_size", topo.vocab_size}};
}

/// Structural conversion without validation; unknown fields are ignored.
inline GenerationTrace trace_from_json(const json& j) {
  if (!j.is_object()) syntax_error("trace record is not an object");
  const std::string version = get_string(j, "version", "trace");
  if (version != kTraceSchemaVersion)
    throw Error(ErrorKind::Version, "trace schema '" + version + "', expected '" +
                                        std::string(kTraceSchemaVersion) + "'");
  GenerationTrace trace;
  trace.prompt_id = get_string(j, "prompt_id", "trace");
  trace.prompt_text = get_string(j, "prompt_text", "trace");
  trace.output_text = get_string(j, "output_text", "trace");
  trace.topology = topology_from_json(field(j, "topology", "trace"), "topology");
  trace.recording_floor = get_real(j, "recording_floor", "trace");
  const json& steps = get_array(j, "steps", "trace");
  trace.steps.reserve(steps.size());
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const json& js = steps[s];
    const std::string where = step_where(s);
    StepRecord step;
    step.t = get_int(js, "t", where);
    step.entropy = get_real(js, "entropy", where);
    step.avg_likelihood = get_real(js, "avg_likelihood", where);
    const json& heads = get_array(js, "heads", where);
    step.heads.reserve(heads.size());
    for (std::size_t h = 0; h < heads.size(); ++h) {
      const std::string hw = where + ".heads[" + std::to_string(h) + "]";
      HeadStat hs;
      hs.layer = get_int(heads[h], "layer", hw);
      hs.head = get_int(heads[h], "head", hw);
      hs.mean = get_real(heads[h], "mean", hw);
      hs.variance = get_real(heads[h], "var", hw);
      hs.skewness = get_real(heads[h], "skew", hw);
      hs.kurtosis = get_real(heads[h], "kurt", hw);
      step.heads.push_back(hs);
    }
    const json& layers = get_array(js, "layers", where);
    step.layers.reserve(layers.size());
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const std::string lw = where + ".layers[" + std::to_string(l) + "]";
      LayerActivations la;
      la.layer = get_int(layers[l], "layer", lw);
      const json& act = get_array(layers[l], "activated", lw);
      la.activated.reserve(act.size());
      for (std::size_t a = 0; a < act.size(); ++a) {
        const std::string aw = lw + ".activated[" + std::to_string(a) + "]";
        if (!act[a].is_array() || act[a].size() != 2) syntax_error(aw + " must be an [id, activation] pair");
        la.activated.push_back({as_int(act[a][0], aw), as_real(act[a][1], aw)});
      }
      const json& topk = get_array(layers[l], "topk", lw);
      la.topk.reserve(topk.size());
      for (std::size_t k = 0; k < topk.size(); ++k)
        la.topk.push_back(as_int(topk[k], lw + ".topk[" + std::to_string(k) + "]"));
      step.layers.push_back(std::move(la));
    }
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

inline std::string join_violations(const std::vector<Violation>& violations) {
  std::string msg;
  for (std::size_t i = 0; i < violations.size() && i < 5; ++i) {
    if (i) msg += "; ";
    msg += violations[i].str();
  }
  if (violations.size() > 5) msg += "; ... (" + std::to_string(violations.size()) + " total)";
  return msg;
}

}  // namespace detail

/// Throws Error with kind Syntax, Version or Invariant.
inline GenerationTrace decode_trace(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line.begin(), line.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, e.what());
  }
  GenerationTrace trace = detail::trace_from_json(j);
  if (auto violations = validate_trace(trace); !violations.empty())
    throw Error(ErrorKind::Invariant, detail::join_violations(violations));
  return trace;
}

/// Calls `sink` for each trace in a newline-delimited stream. Blank lines
/// are skipped; errors carry the 1-based line number.
inline std::size_t for_each_trace(std::istream& in, const std::function<void(GenerationTrace&&)>& sink,
                                  const std::string& source = "<stream>") {
  std::string line;
  std::size_t lineno = 0;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      sink(decode_trace(line));
    } catch (const Error& e) {
      throw Error(e.kind(), source + ":" + std::to_string(lineno) + ": " + e.what());
    }
    ++count;
  }
  return count;
}

inline std::vector<GenerationTrace> read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open trace file " + path);
  std::vector<GenerationTrace> traces;
  for_each_trace(in, [&traces](GenerationTrace&& t) { traces.push_back(std::move(t)); }, path);
  return traces;
}

inline std::string encode_traces(const std::vector<GenerationTrace>& traces) {
  std::string out;
  for (const auto& t : traces) {
    out += encode_trace(t);
    out += '\n';
  }
  return out;
}

}  // namespace lecov

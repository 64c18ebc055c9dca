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

// Model-runner wire protocol. The harness starts the runner as a child
// process and both sides exchange one JSON object per line:
//
//   runner  -> harness  {"hello":"lecov-runner","schema_version":"lecov-trace/1","topology":{...}}
//   harness -> runner   {"generate":true,"nonce":"m7","prompt":"...","max_steps":8}
//   runner  -> harness  {"trace":<trace record whose prompt_id is the nonce>}
//   runner  -> harness  {"error":true,"nonce":"m7","message":"..."}
//
// The runner exits when its standard input is closed.

#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "lecov/error.hpp"
#include "lecov/trace.hpp"
#include "lecov/trace_io.hpp"

namespace lecov::protocol {

struct Hello {
  std::string schema_version;
  Topology topology;
};

struct GenerateRequest {
  std::string nonce;
  std::string prompt;
  int max_steps = 0;  // 0: runner default
};

struct TraceReply {
  GenerationTrace trace;
};

struct ErrorReply {
  std::string nonce;
  std::string message;
};

inline std::string encode_hello(const Topology& topology) {
  nlohmann::ordered_json j;
  j["hello"] = "lecov-runner";
  j["schema_version"] = std::string(kTraceSchemaVersion);
  j["topology"] = nlohmann::ordered_json{{"layers", topology.layers},
                                         {"heads_per_layer", topology.heads_per_layer},
                                         {"neurons_per_layer", topology.neurons_per_layer},
                                         {"vocab_size", topology.vocab_size}};
  return j.dump();
}

inline std::string encode_request(const GenerateRequest& req) {
  nlohmann::ordered_json j;
  j["generate"] = true;
  j["nonce"] = req.nonce;
  j["prompt"] = req.prompt;
  j["max_steps"] = req.max_steps;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

inline std::string encode_trace_reply(const GenerationTrace& trace) { return "{\"trace\":" + encode_trace(trace) + "}"; }

inline std::string encode_error(std::string_view nonce, std::string_view message) {
  nlohmann::ordered_json j;
  j["error"] = true;
  j["nonce"] = std::string(nonce);
  j["message"] = std::string(message);
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

namespace detail {

inline nlohmann::json parse_line(std::string_view line) {
  try {
    auto j = nlohmann::json::parse(line.begin(), line.end());
    if (!j.is_object()) throw Error(ErrorKind::Protocol, "message is not an object");
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Protocol, std::string("malformed message: ") + e.what());
  }
}

}  // namespace detail

inline Hello decode_hello(std::string_view line) {
  const auto j = detail::parse_line(line);
  if (!j.contains("hello")) throw Error(ErrorKind::Protocol, "expected a hello message");
  try {
    Hello h;
    h.schema_version = lecov::detail::get_string(j, "schema_version", "hello");
    h.topology = lecov::detail::topology_from_json(lecov::detail::field(j, "topology", "hello"), "hello.topology");
    if (h.schema_version != kTraceSchemaVersion)
      throw Error(ErrorKind::Protocol, "runner speaks schema '" + h.schema_version + "'");
    return h;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Protocol) throw;
    throw Error(ErrorKind::Protocol, e.what());
  }
}

inline GenerateRequest decode_request(std::string_view line) {
  const auto j = detail::parse_line(line);
  if (!j.contains("generate")) throw Error(ErrorKind::Protocol, "expected a generate request");
  try {
    GenerateRequest r;
    r.nonce = lecov::detail::get_string(j, "nonce", "request");
    r.prompt = lecov::detail::get_string(j, "prompt", "request");
    if (j.contains("max_steps")) r.max_steps = lecov::detail::get_int(j, "max_steps", "request");
    return r;
  } catch (const Error& e) {
    throw Error(ErrorKind::Protocol, e.what());
  }
}

/// A reply is either a validated trace or a runner-side error.
inline std::variant<TraceReply, ErrorReply> decode_reply(std::string_view line) {
  const auto j = detail::parse_line(line);
  if (j.contains("error")) {
    ErrorReply e;
    if (j.contains("nonce") && j["nonce"].is_string()) e.nonce = j["nonce"].get<std::string>();
    if (j.contains("message") && j["message"].is_string()) e.message = j["message"].get<std::string>();
    return e;
  }
  if (!j.contains("trace")) throw Error(ErrorKind::Protocol, "reply carries neither trace nor error");
  try {
    TraceReply r{lecov::detail::trace_from_json(j["trace"])};
    if (auto v = validate_trace(r.trace); !v.empty())
      throw Error(ErrorKind::Protocol, "invalid trace: " + lecov::detail::join_violations(v));
    return r;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Protocol) throw;
    throw Error(ErrorKind::Protocol, std::string("malformed trace: ") + e.what());
  }
}

}  // namespace lecov::protocol

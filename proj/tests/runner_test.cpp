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


#include <gtest/gtest.h>

#include <chrono>
#include <functional>

#include "lecov/protocol.hpp"
#include "lecov/runner.hpp"
#include "lecov/trace_io.hpp"

namespace {

using namespace lecov;
using namespace std::chrono_literals;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

TEST(Protocol, MessagesRoundTrip) {
  const Topology topo{2, 2, 16, 64};
  EXPECT_EQ(protocol::decode_hello(protocol::encode_hello(topo)).topology, topo);
  const auto req = protocol::decode_request(protocol::encode_request({"n7", "say \"hi\"\n", 3}));
  EXPECT_EQ(req.nonce, "n7");
  EXPECT_EQ(req.prompt, "say \"hi\"\n");
  EXPECT_EQ(req.max_steps, 3);

  const auto g = RefModelRunner().generate("why is the sky blue", "n7");
  const auto reply = protocol::decode_reply(protocol::encode_trace_reply(g.trace));
  ASSERT_TRUE(std::holds_alternative<protocol::TraceReply>(reply));
  EXPECT_EQ(std::get<protocol::TraceReply>(reply).trace, g.trace);

  const auto err = protocol::decode_reply(protocol::encode_error("n7", "boom"));
  ASSERT_TRUE(std::holds_alternative<protocol::ErrorReply>(err));
  EXPECT_EQ(std::get<protocol::ErrorReply>(err).message, "boom");
}

TEST(Protocol, MalformedMessagesAreProtocolErrors) {
  EXPECT_EQ(kind_of([] { protocol::decode_hello("not json"); }), ErrorKind::Protocol);
  EXPECT_EQ(kind_of([] { protocol::decode_hello(R"({"hello":"x","schema_version":"other/9","topology":{}})"); }),
            ErrorKind::Protocol);
  EXPECT_EQ(kind_of([] { protocol::decode_reply(R"({"neither":1})"); }), ErrorKind::Protocol);
  EXPECT_EQ(kind_of([] { protocol::decode_reply(R"({"trace":{"version":"lecov-trace/1"}})"); }), ErrorKind::Protocol);
  EXPECT_EQ(kind_of([] { protocol::decode_request(R"({"generate":true,"prompt":"p"})"); }), ErrorKind::Protocol);

  auto g = RefModelRunner().generate("why is the sky blue", "n");
  g.trace.steps[0].avg_likelihood = 2.0;
  const std::string bad = protocol::encode_trace_reply(g.trace);
  EXPECT_EQ(kind_of([&] { protocol::decode_reply(bad); }), ErrorKind::Protocol);
}

TEST(ChildRunner, MatchesInProcessModel) {
  ChildProcessRunner child(LECOV_RUNNER);
  RefModelRunner local;
  EXPECT_EQ(child.topology(), local.topology());
  for (const char* p : {"why is the sky blue", "a zzyx here", "x"}) {
    const auto a = child.generate(p, "nonce-1");
    const auto b = local.generate(p, "nonce-1");
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.response, b.response);
    EXPECT_TRUE(validate_trace(a.trace).empty());
  }
}

TEST(ChildRunner, IdenticalRequestsGiveIdenticalTraces) {
  ChildProcessRunner child(LECOV_RUNNER);
  EXPECT_EQ(encode_trace(child.generate("tell me a story", "n").trace),
            encode_trace(child.generate("tell me a story", "n").trace));
}

TEST(ChildRunner, RunnerErrorReply) {
  ChildProcessRunner child(LECOV_RUNNER);
  EXPECT_EQ(kind_of([&] { child.generate("   ", "n"); }), ErrorKind::Protocol);
  EXPECT_NO_THROW(child.generate("still serving", "n2"));
}

TEST(ChildRunner, WrongNonceIsRejected) {
  const std::string cmd = std::string(LECOV_RUNNER) + " | sed -u 's/\"prompt_id\":\"[^\"]*\"/\"prompt_id\":\"other\"/'";
  ChildProcessRunner child(cmd);
  EXPECT_EQ(kind_of([&] { child.generate("why is the sky blue", "n"); }), ErrorKind::Protocol);
}

TEST(ChildRunner, Timeout) {
  const std::string hello = protocol::encode_hello({1, 1, 2, 8});
  const std::string cmd = "printf '%s\\n' '" + hello + "'; sleep 5";
  ChildProcessRunner child(cmd, 200ms);
  const auto start = std::chrono::steady_clock::now();
  EXPECT_EQ(kind_of([&] { child.generate("p", "n"); }), ErrorKind::Protocol);
  EXPECT_LT(std::chrono::steady_clock::now() - start, 3s);
}

TEST(ChildRunner, MissingHandshake) {
  EXPECT_EQ(kind_of([] { ChildProcessRunner("true"); }), ErrorKind::Protocol);
  EXPECT_EQ(kind_of([] { ChildProcessRunner("echo '{\"not\":\"hello\"}'"); }), ErrorKind::Protocol);
}

}  // namespace

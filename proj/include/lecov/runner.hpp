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

#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include "lecov/error.hpp"
#include "lecov/protocol.hpp"
#include "lecov/refmodel.hpp"
#include "lecov/trace.hpp"

namespace lecov {

/// The model under test: one prompt in, response and trace out.
class ModelRunner {
 public:
  virtual ~ModelRunner() = default;
  virtual Topology topology() const = 0;
  /// The returned trace's prompt_id equals `nonce`. Throws Error(Protocol)
  /// when the runner misbehaves.
  virtual Generation generate(const std::string& prompt, const std::string& nonce) = 0;
};

/// Reference model in the same process. Traces are quantized to file
/// precision so results match a runner reached over the wire.
class RefModelRunner final : public ModelRunner {
 public:
  explicit RefModelRunner(RefModelConfig config = {}) : model_(config) {}

  Topology topology() const override { return model_.topology(); }

  Generation generate(const std::string& prompt, const std::string& nonce) override {
    Generation g = model_.generate(prompt, nonce);
    g.trace = quantize(std::move(g.trace));
    return g;
  }

  const RefModel& model() const noexcept { return model_; }

 private:
  RefModel model_;
};

/// Runner reached through the line protocol over a child process's
/// standard streams. The command is run with /bin/sh -c in its own process
/// group; the group is killed if it outlives closing its input by 1 s.
class ChildProcessRunner final : public ModelRunner {
 public:
  explicit ChildProcessRunner(std::string command, std::chrono::milliseconds timeout = std::chrono::seconds(120),
                              int max_steps = 0)
      : command_(std::move(command)), timeout_(timeout), max_steps_(max_steps) {
    ::signal(SIGPIPE, SIG_IGN);
    spawn();
    try {
      const auto hello = protocol::decode_hello(read_line());
      topology_ = hello.topology;
    } catch (...) {
      shutdown();
      throw;
    }
  }

  ChildProcessRunner(const ChildProcessRunner&) = delete;
  ChildProcessRunner& operator=(const ChildProcessRunner&) = delete;

  ~ChildProcessRunner() override { shutdown(); }

  Topology topology() const override { return topology_; }

  Generation generate(const std::string& prompt, const std::string& nonce) override {
    write_line(protocol::encode_request({nonce, prompt, max_steps_}));
    auto reply = protocol::decode_reply(read_line());
    if (auto* err = std::get_if<protocol::ErrorReply>(&reply))
      throw Error(ErrorKind::Protocol, "runner error for '" + nonce + "': " + err->message);
    auto& trace = std::get<protocol::TraceReply>(reply).trace;
    if (trace.prompt_id != nonce)
      throw Error(ErrorKind::Protocol, "runner echoed prompt_id '" + trace.prompt_id + "' for nonce '" + nonce + "'");
    if (!(trace.topology == topology_)) throw Error(ErrorKind::Protocol, "runner trace topology differs from handshake");
    Generation g;
    g.response = trace.output_text;
    g.trace = std::move(trace);
    return g;
  }

 private:
  void spawn() {
    int to_child[2];
    int from_child[2];
    if (::pipe(to_child) != 0) throw Error(ErrorKind::Protocol, std::string("pipe: ") + std::strerror(errno));
    if (::pipe(from_child) != 0) {
      ::close(to_child[0]);
      ::close(to_child[1]);
      throw Error(ErrorKind::Protocol, std::string("pipe: ") + std::strerror(errno));
    }
    pid_ = ::fork();
    if (pid_ < 0) throw Error(ErrorKind::Protocol, std::string("fork: ") + std::strerror(errno));
    if (pid_ == 0) {
      ::setpgid(0, 0);
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    in_fd_ = to_child[1];
    out_fd_ = from_child[0];
  }

  void write_line(const std::string& msg) {
    std::string data = msg + "\n";
    std::size_t off = 0;
    while (off < data.size()) {
      const ssize_t n = ::write(in_fd_, data.data() + off, data.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw Error(ErrorKind::Protocol, std::string("write to runner: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(n);
    }
  }

  std::string read_line() {
    const auto deadline = std::chrono::steady_clock::now() + timeout_;
    for (;;) {
      if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) throw Error(ErrorKind::Protocol, "runner timed out");
      pollfd pfd{out_fd_, POLLIN, 0};
      const int rc = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(left.count(), 1 << 30)));
      if (rc < 0) {
        if (errno == EINTR) continue;
        throw Error(ErrorKind::Protocol, std::string("poll: ") + std::strerror(errno));
      }
      if (rc == 0) continue;
      char chunk[65536];
      const ssize_t n = ::read(out_fd_, chunk, sizeof chunk);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw Error(ErrorKind::Protocol, std::string("read from runner: ") + std::strerror(errno));
      }
      if (n == 0) throw Error(ErrorKind::Protocol, "runner closed its output");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  void shutdown() noexcept {
    if (in_fd_ >= 0) ::close(in_fd_);
    in_fd_ = -1;
    if (pid_ > 0) {
      int status = 0;
      for (int i = 0; i < 100; ++i) {
        if (::waitpid(pid_, &status, WNOHANG) != 0) {
          pid_ = -1;
          break;
        }
        ::usleep(10000);
      }
      if (pid_ > 0) {
        ::kill(-pid_, SIGKILL);  // the whole pipeline started by sh
        ::waitpid(pid_, &status, 0);
        pid_ = -1;
      }
    }
    if (out_fd_ >= 0) ::close(out_fd_);
    out_fd_ = -1;
  }

  std::string command_;
  std::chrono::milliseconds timeout_;
  int max_steps_;
  pid_t pid_ = -1;
  int in_fd_ = -1;
  int out_fd_ = -1;
  std::string buffer_;
  Topology topology_;
};

/// Serves the wire protocol for `model` over the given streams until
/// input ends. Used by the reference runner executable.
inline int serve_protocol(const RefModel& model, std::istream& in, std::ostream& out) {
  out << protocol::encode_hello(model.topology()) << '\n' << std::flush;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::string nonce;
    try {
      const auto req = protocol::decode_request(line);
      nonce = req.nonce;
      auto g = model.generate(req.prompt, req.nonce, nullptr, req.max_steps);
      out << protocol::encode_trace_reply(g.trace) << '\n' << std::flush;
    } catch (const std::exception& e) {
      out << protocol::encode_error(nonce, e.what()) << '\n' << std::flush;
    }
  }
  return 0;
}

}  // namespace lecov

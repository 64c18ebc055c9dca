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

#include <stdexcept>
#include <string>

namespace lecov {

enum class ErrorKind {
  Domain,         // argument outside an operation's domain
  Config,         // invalid or inconsistent configuration
  Syntax,         // malformed serialized input
  Version,        // schema version not understood
  Invariant,      // well-formed input violating a data invariant
  Topology,       // trace/bounds/state topology disagree
  Protocol,       // model-runner wire protocol failure
  Judge,          // judge could not produce a verdict
  NotApplicable,  // mutation operator precondition failed
  Io,
};

constexpr const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Config: return "config";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Version: return "version";
    case ErrorKind::Invariant: return "invariant";
    case ErrorKind::Topology: return "topology";
    case ErrorKind::Protocol: return "protocol";
    case ErrorKind::Judge: return "judge";
    case ErrorKind::NotApplicable: return "not-applicable";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lecov

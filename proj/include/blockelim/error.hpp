// Copyright 2026 The blockelim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace blockelim {

/// Failure categories. Each maps to a distinct process exit code in the CLI.
enum class ErrorKind {
  Parse,        // malformed input text (instance, partition, solution, bench spec)
  Invalid,      // structurally invalid object (partition, params, assignment)
  Io,
  Timeout,
  WidthLimit,   // neighborhood or block exceeds a configured cap
  NodeBudget,   // branch-and-bound node budget exhausted
  Correctness,  // cross-check failed: solver bug detector
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::Parse,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  /// 1-based line number of the offending input line (0 if not line-bound).
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace blockelim

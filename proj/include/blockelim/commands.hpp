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

// Subcommands of the `blockelim` tool. Each returns a process exit code and
// writes only to the given streams and the files named in its options.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "blockelim/bench.hpp"
#include "blockelim/error.hpp"
#include "blockelim/generator.hpp"
#include "blockelim/subsolver.hpp"

namespace blockelim {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kParse = 2;
inline constexpr int kInfeasible = 3;
inline constexpr int kTimeout = 4;
inline constexpr int kWidthCap = 5;
inline constexpr int kNodeBudget = 6;
inline constexpr int kViolation = 7;
inline constexpr int kIo = 8;
inline constexpr int kInternal = 10;
}  // namespace exit_code

int exit_code_for(ErrorKind kind);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

struct GenOptions {
  GeneratorParams params;
  std::string output;  // empty: stdout
};

enum class PartitionSource { File, Meta, Auto };

struct SolveOptions {
  std::string instance;
  Mode mode = Mode::Lea;
  std::string partition;                 // partition file, if any
  std::optional<PartitionSource> source;  // default: file if given, else meta
  Strategy strategy = Strategy::BranchAndBound;
  double timeout_seconds = 120.0;
  std::uint64_t node_budget = 100'000'000;
  std::string output;  // solution file; empty: solution printed to `out`
  bool trace = false;  // dump every local table before the summary
};

struct GraphOptions {
  std::string instance;
  std::string partition;
  bool quotient = false;
  std::string output;
};

struct CheckOptions {
  std::string instance;
  std::string solution;
};

struct BenchCommandOptions {
  std::string spec;
  std::string output;  // CSV; empty: stdout
  BenchOptions bench;
};

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);
/// Summary line `<mode> <status> <objective> <seconds>`.
int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);
int cmd_graph(const GraphOptions& options, std::ostream& out, std::ostream& err);
/// Prints `ok`, or one line per violation.
int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchCommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace blockelim

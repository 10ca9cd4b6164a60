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

// Timed comparison of monolithic solving against block elimination on
// generated staircase instances.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blockelim/generator.hpp"
#include "blockelim/model.hpp"
#include "blockelim/subsolver.hpp"

namespace blockelim {

enum class Mode { Mono, Lea, LeaPkg };

std::string_view mode_name(Mode mode);
/// "mono", "lea" or "lea-pkg".
std::optional<Mode> parse_mode(std::string_view name);

struct BenchRow {
  GeneratorParams params;
  std::vector<Mode> modes;
  int repetitions = 1;
  double timeout_seconds = 120.0;
};

struct BenchSpec {
  std::vector<BenchRow> rows;
};

/// One row per line: `n m k b seed modes reps timeout`, where modes is "all"
/// or a comma list of mode names. '#' comments. Throws ParseError.
BenchSpec parse_bench_spec(std::string_view text);

enum class RunStatus { Optimal, Infeasible, Timeout, NodeLimit };

std::string_view status_name(RunStatus status);

struct ModeResult {
  Mode mode = Mode::Mono;
  RunStatus status = RunStatus::Optimal;
  double median_seconds = 0.0;  // meaningful only when completed()
  std::optional<Value> objective;
  std::vector<double> samples;

  bool completed() const { return status == RunStatus::Optimal || status == RunStatus::Infeasible; }
};

struct BenchRowReport {
  GeneratorParams params;
  std::vector<ModeResult> results;
  /// Every completed mode reports the same status and objective.
  bool agreement = true;
};

struct BenchReport {
  std::vector<BenchRowReport> rows;
};

struct BenchOptions {
  Strategy mono_strategy = Strategy::BranchAndBound;
  Strategy local_strategy = Strategy::BranchAndBound;
  SolverLimits limits;  // deadline is set per run from the row timeout
  unsigned jobs = 1;
  /// One untimed run before the timed repetitions.
  bool warmup = true;
};

double median(std::vector<double> samples);

/// Times `repetitions` solves of one mode (solve call only). The lea modes
/// use the staircase partition from the instance metadata.
ModeResult run_mode(const IlpInstance& instance, Mode mode, int repetitions, double timeout_seconds,
                    const BenchOptions& options);

/// Runs every row, `options.jobs` rows at a time. Throws Error(Correctness)
/// if completed modes of a row disagree.
BenchReport run_bench(const BenchSpec& spec, const BenchOptions& options = {});

/// Header `n,m,k,b,mode,median_seconds,objective,status`, one line per mode.
std::string to_csv(const BenchReport& report);

}  // namespace blockelim

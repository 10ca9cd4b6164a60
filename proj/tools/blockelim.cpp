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

// Command line front end.
//
//   blockelim gen   --n 180 --m 12 --k 6 --b 1 --seed 7 -o p1.ilp
//   blockelim solve p1.ilp --mode lea [--partition p1.part] [--trace]
//   blockelim solve p1.ilp --mode mono --strategy bnb --timeout 60
//   blockelim graph p1.ilp [--quotient --partition p1.part] [--dot]
//   blockelim check p1.ilp p1.sol
//   blockelim bench rows.txt -o report.csv --jobs 1

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "blockelim/commands.hpp"

namespace {

using namespace blockelim;

const std::map<std::string, Strategy> kStrategies{{"exhaustive", Strategy::Exhaustive},
                                                  {"bnb", Strategy::BranchAndBound}};
const std::map<std::string, Mode> kModes{{"mono", Mode::Mono}, {"lea", Mode::Lea}, {"lea-pkg", Mode::LeaPkg}};
const std::map<std::string, PartitionSource> kSources{
    {"file", PartitionSource::File}, {"meta", PartitionSource::Meta}, {"auto", PartitionSource::Auto}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block local elimination solver for sparse 0/1 integer programs"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a staircase instance");
  gen_cmd->add_option("--n", gen.params.n, "Number of variables")->required();
  gen_cmd->add_option("--m", gen.params.m, "Number of constraints")->required();
  gen_cmd->add_option("--k", gen.params.k, "Number of blocks")->required();
  gen_cmd->add_option("--b", gen.params.b, "Separator size")->required();
  gen_cmd->add_option("--seed", gen.params.seed, "splitmix64 seed");
  gen_cmd->add_option("--coeff-min", gen.params.coeff_min, "Smallest coefficient")->capture_default_str();
  gen_cmd->add_option("--coeff-max", gen.params.coeff_max, "Largest coefficient")->capture_default_str();
  gen_cmd->add_option("--rhs-num", gen.params.rhs_num, "rhs factor numerator")->capture_default_str();
  gen_cmd->add_option("--rhs-den", gen.params.rhs_den, "rhs factor denominator")->capture_default_str();
  gen_cmd->add_option("-o,--output", gen.output, "Output file (default: stdout)");

  SolveOptions solve;
  PartitionSource source = PartitionSource::File;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("instance", solve.instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--mode", solve.mode, "mono | lea | lea-pkg")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case))
      ->capture_default_str();
  solve_cmd->add_option("--partition", solve.partition, "Partition file (block lines)");
  auto* source_opt = solve_cmd->add_option("--partition-source", source, "file | meta | auto")
                         ->transform(CLI::CheckedTransformer(kSources, CLI::ignore_case));
  solve_cmd->add_option("--strategy", solve.strategy, "exhaustive | bnb")
      ->transform(CLI::CheckedTransformer(kStrategies, CLI::ignore_case));
  solve_cmd->add_option("--timeout", solve.timeout_seconds, "Time limit in seconds")->capture_default_str();
  solve_cmd->add_option("--node-budget", solve.node_budget, "Branch-and-bound node budget")->capture_default_str();
  solve_cmd->add_option("-o,--output", solve.output, "Solution file (default: stdout)");
  solve_cmd->add_flag("--trace", solve.trace, "Print every local table");

  GraphOptions graph;
  bool dot = true;
  auto* graph_cmd = app.add_subcommand("graph", "Emit the interaction or quotient graph as DOT");
  graph_cmd->add_option("instance", graph.instance, "Instance file")->required()->check(CLI::ExistingFile);
  graph_cmd->add_option("--partition", graph.partition, "Partition file");
  graph_cmd->add_flag("--quotient", graph.quotient, "Quotient graph of the partition");
  graph_cmd->add_flag("--dot", dot, "DOT output (the only format)");
  graph_cmd->add_option("-o,--output", graph.output, "Output file (default: stdout)");

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Verify a solution file against an instance");
  check_cmd->add_option("instance", check.instance, "Instance file")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("solution", check.solution, "Solution file")->required()->check(CLI::ExistingFile);

  BenchCommandOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark spec and write a CSV report");
  bench_cmd->add_option("spec", bench.spec, "Bench spec (n m k b seed modes reps timeout)")
      ->required()
      ->check(CLI::ExistingFile);
  bench_cmd->add_option("-o,--output", bench.output, "CSV file (default: stdout)");
  bench_cmd->add_option("--jobs", bench.bench.jobs, "Rows run concurrently")->capture_default_str();
  bench_cmd->add_option("--mono-strategy", bench.bench.mono_strategy, "exhaustive | bnb")
      ->transform(CLI::CheckedTransformer(kStrategies, CLI::ignore_case));
  bench_cmd->add_option("--local-strategy", bench.bench.local_strategy, "exhaustive | bnb")
      ->transform(CLI::CheckedTransformer(kStrategies, CLI::ignore_case));
  bench_cmd->add_option("--node-budget", bench.bench.limits.node_budget, "Branch-and-bound node budget")
      ->capture_default_str();
  bool no_warmup = false;
  bench_cmd->add_flag("--no-warmup", no_warmup, "Skip the untimed warm-up run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  if (*gen_cmd) return cmd_gen(gen, std::cout, std::cerr);
  if (*solve_cmd) {
    if (*source_opt) solve.source = source;
    return cmd_solve(solve, std::cout, std::cerr);
  }
  if (*graph_cmd) return cmd_graph(graph, std::cout, std::cerr);
  if (*check_cmd) return cmd_check(check, std::cout, std::cerr);
  if (*bench_cmd) {
    bench.bench.warmup = !no_warmup;
    return cmd_bench(bench, std::cout, std::cerr);
  }
  return exit_code::kUsage;
}

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

#include "blockelim/commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "blockelim/elimination.hpp"
#include "blockelim/graph.hpp"
#include "blockelim/model.hpp"

namespace blockelim {

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_code::kInternal;
  }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) out << text;
  else write_text_file(path, text);
}

std::string seconds_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

OrderedPartition choose_partition(const SolveOptions& options, const IlpInstance& instance) {
  PartitionSource source;
  if (options.source) source = *options.source;
  else if (!options.partition.empty()) source = PartitionSource::File;
  else if (instance.meta()) source = PartitionSource::Meta;
  else
    throw Error(ErrorKind::Invalid,
                "missing partition: pass --partition FILE, use an instance with staircase metadata, "
                "or --partition-source auto");

  switch (source) {
    case PartitionSource::File:
      if (options.partition.empty()) throw Error(ErrorKind::Invalid, "missing partition: --partition FILE required");
      return parse_partition(read_text_file(options.partition));
    case PartitionSource::Meta:
      if (!instance.meta()) throw Error(ErrorKind::Invalid, "missing partition: instance has no staircase metadata");
      return staircase_partition(*instance.meta());
    case PartitionSource::Auto:
      return find_indistinguishable_blocks(build_interaction_graph(instance));
  }
  throw Error(ErrorKind::Invalid, "unknown partition source");
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return exit_code::kParse;
    case ErrorKind::Invalid: return exit_code::kParse;
    case ErrorKind::Io: return exit_code::kIo;
    case ErrorKind::Timeout: return exit_code::kTimeout;
    case ErrorKind::WidthLimit: return exit_code::kWidthCap;
    case ErrorKind::NodeBudget: return exit_code::kNodeBudget;
    case ErrorKind::Correctness: return exit_code::kInternal;
  }
  return exit_code::kInternal;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << content;
  if (!out.flush()) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    emit(options.output, serialize_instance(generate(options.params)), out);
    return exit_code::kOk;
  });
}

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const IlpInstance instance = parse_instance(read_text_file(options.instance));
    std::optional<OrderedPartition> partition;
    if (options.mode != Mode::Mono) partition = choose_partition(options, instance);

    SolverLimits limits;
    limits.node_budget = options.node_budget;
    const auto start = Clock::now();
    limits.deadline = start + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(options.timeout_seconds));

    Solution solution;
    std::string trace;
    try {
      if (options.mode == Mode::Mono) {
        solution = solve_monolithic(instance, options.strategy, limits);
      } else {
        const EliminationOptions elim{LocalSolver(options.strategy, limits), options.mode == Mode::LeaPkg};
        EliminationRecord record;
        solution = solve_lea(instance, *partition, elim, &record);
        if (options.trace)
          for (std::size_t j = 0; j < record.tables.size(); ++j) trace += format_table(record.tables[j], j + 1);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Timeout) throw;
      const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
      out << mode_name(options.mode) << " TIMEOUT - " << seconds_text(seconds) << '\n';
      return exit_code::kTimeout;
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();

    out << trace;
    emit(options.output, serialize_solution(solution), out);
    const bool optimal = solution.status == SolveStatus::Optimal;
    out << mode_name(options.mode) << ' ' << (optimal ? "optimal" : "infeasible") << ' '
        << (optimal ? std::to_string(*solution.objective) : std::string("-")) << ' ' << seconds_text(seconds)
        << '\n';
    return optimal ? exit_code::kOk : exit_code::kInfeasible;
  });
}

int cmd_graph(const GraphOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const IlpInstance instance = parse_instance(read_text_file(options.instance));
    const InteractionGraph graph = build_interaction_graph(instance);
    if (options.quotient) {
      OrderedPartition partition;
      if (!options.partition.empty()) partition = parse_partition(read_text_file(options.partition));
      else if (instance.meta()) partition = staircase_partition(*instance.meta());
      else throw Error(ErrorKind::Invalid, "missing partition: --quotient needs --partition FILE or staircase metadata");
      emit(options.output, to_dot(quotient_graph(graph, partition)), out);
    } else {
      emit(options.output, to_dot(graph), out);
    }
    return exit_code::kOk;
  });
}

int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const IlpInstance instance = parse_instance(read_text_file(options.instance));
    const Solution claimed = parse_solution(read_text_file(options.solution));
    if (claimed.status == SolveStatus::Infeasible) {
      out << "unverified: infeasibility claims cannot be certified by check\n";
      return exit_code::kViolation;
    }
    const Assignment& x = *claimed.assignment;
    if (x.size() != instance.num_vars()) {
      out << "assignment length " << x.size() << " differs from n=" << instance.num_vars() << '\n';
      return exit_code::kViolation;
    }
    const Evaluation ev = evaluate(instance, x);
    bool ok = true;
    for (std::size_t i : ev.violated) {
      out << "violated constraint " << i + 1 << '\n';
      ok = false;
    }
    if (ev.objective != *claimed.objective) {
      out << "objective mismatch: claimed " << *claimed.objective << ", actual " << ev.objective << '\n';
      ok = false;
    }
    if (ok) out << "ok\n";
    return ok ? exit_code::kOk : exit_code::kViolation;
  });
}

int cmd_bench(const BenchCommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BenchSpec spec = parse_bench_spec(read_text_file(options.spec));
    const BenchReport report = run_bench(spec, options.bench);
    emit(options.output, to_csv(report), out);
    return exit_code::kOk;
  });
}

}  // namespace blockelim

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

#include "blockelim/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "blockelim/elimination.hpp"
#include "blockelim/error.hpp"

namespace blockelim {

namespace {

using Clock = std::chrono::steady_clock;

template <typename T>
T parse_number(const std::string& token, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + token + "'");
  return value;
}

double parse_seconds(const std::string& token, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used == token.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, "expected timeout in seconds, got '" + token + "'");
}

}  // namespace

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::Mono: return "mono";
    case Mode::Lea: return "lea";
    case Mode::LeaPkg: return "lea-pkg";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "mono") return Mode::Mono;
  if (name == "lea") return Mode::Lea;
  if (name == "lea-pkg") return Mode::LeaPkg;
  return std::nullopt;
}

std::string_view status_name(RunStatus status) {
  switch (status) {
    case RunStatus::Optimal: return "optimal";
    case RunStatus::Infeasible: return "infeasible";
    case RunStatus::Timeout: return "TIMEOUT";
    case RunStatus::NodeLimit: return "NODE_LIMIT";
  }
  return "?";
}

BenchSpec parse_bench_spec(std::string_view text) {
  BenchSpec spec;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 8) throw ParseError(number, "expected `n m k b seed modes reps timeout`");

    BenchRow row;
    row.params.n = parse_number<Var>(tok[0], number, "n");
    row.params.m = parse_number<int>(tok[1], number, "m");
    row.params.k = parse_number<int>(tok[2], number, "k");
    row.params.b = parse_number<int>(tok[3], number, "b");
    row.params.seed = parse_number<std::uint64_t>(tok[4], number, "seed");
    if (tok[5] == "all") {
      row.modes = {Mode::Mono, Mode::Lea, Mode::LeaPkg};
    } else {
      std::size_t p = 0;
      while (p <= tok[5].size()) {
        std::size_t c = tok[5].find(',', p);
        if (c == std::string::npos) c = tok[5].size();
        const auto mode = parse_mode(std::string_view(tok[5]).substr(p, c - p));
        if (!mode) throw ParseError(number, "unknown mode in '" + tok[5] + "'");
        row.modes.push_back(*mode);
        p = c + 1;
      }
    }
    row.repetitions = parse_number<int>(tok[6], number, "repetitions");
    row.timeout_seconds = parse_seconds(tok[7], number);
    if (row.repetitions < 1) throw ParseError(number, "repetitions must be at least 1");
    if (!(row.timeout_seconds > 0)) throw ParseError(number, "timeout must be positive");
    try {
      validate_params(row.params);
    } catch (const Error& e) {
      throw ParseError(number, e.what());
    }
    spec.rows.push_back(std::move(row));
  }
  return spec;
}

double median(std::vector<double> samples) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  return samples.size() % 2 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
}

ModeResult run_mode(const IlpInstance& instance, Mode mode, int repetitions, double timeout_seconds,
                    const BenchOptions& options) {
  std::optional<OrderedPartition> partition;
  if (mode != Mode::Mono) {
    if (!instance.meta()) throw Error(ErrorKind::Invalid, "lea modes need staircase metadata");
    partition = staircase_partition(*instance.meta());
  }

  ModeResult result;
  result.mode = mode;
  const auto timeout = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(timeout_seconds));
  const int runs = repetitions + (options.warmup ? 1 : 0);
  for (int run = 0; run < runs; ++run) {
    SolverLimits limits = options.limits;
    const auto start = Clock::now();
    limits.deadline = start + timeout;
    Solution solution;
    try {
      if (mode == Mode::Mono) {
        solution = solve_monolithic(instance, options.mono_strategy, limits);
      } else {
        EliminationOptions elim{LocalSolver(options.local_strategy, limits), mode == Mode::LeaPkg};
        solution = solve_lea(instance, *partition, elim);
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Timeout) result.status = RunStatus::Timeout;
      else if (e.kind() == ErrorKind::NodeBudget) result.status = RunStatus::NodeLimit;
      else throw;
      result.objective.reset();
      result.samples.clear();
      return result;
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (seconds > timeout_seconds) {
      result.status = RunStatus::Timeout;
      result.objective.reset();
      result.samples.clear();
      return result;
    }
    result.status = solution.status == SolveStatus::Optimal ? RunStatus::Optimal : RunStatus::Infeasible;
    result.objective = solution.objective;
    if (!(options.warmup && run == 0)) result.samples.push_back(seconds);
  }
  result.median_seconds = median(result.samples);
  return result;
}

BenchReport run_bench(const BenchSpec& spec, const BenchOptions& options) {
  BenchReport report;
  report.rows.resize(spec.rows.size());
  std::vector<std::exception_ptr> failures(spec.rows.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t i = next++; i < spec.rows.size(); i = next++) {
      try {
        const BenchRow& row = spec.rows[i];
        const IlpInstance instance = generate(row.params);
        BenchRowReport& out = report.rows[i];
        out.params = row.params;
        for (Mode mode : row.modes)
          out.results.push_back(run_mode(instance, mode, row.repetitions, row.timeout_seconds, options));
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(spec.rows.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    auto& row = report.rows[i];
    const ModeResult* reference = nullptr;
    for (const auto& r : row.results) {
      if (!r.completed()) continue;
      if (!reference) reference = &r;
      else if (r.status != reference->status || r.objective != reference->objective) row.agreement = false;
    }
    if (!row.agreement) {
      std::ostringstream msg;
      msg << "bench row " << i + 1 << " (n=" << row.params.n << " m=" << row.params.m << " k=" << row.params.k
          << " b=" << row.params.b << "): modes disagree on the optimum";
      throw Error(ErrorKind::Correctness, msg.str());
    }
  }
  return report;
}

std::string to_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "n,m,k,b,mode,median_seconds,objective,status\n";
  for (const auto& row : report.rows) {
    for (const auto& r : row.results) {
      out << row.params.n << ',' << row.params.m << ',' << row.params.k << ',' << row.params.b << ','
          << mode_name(r.mode) << ',';
      if (r.completed()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", r.median_seconds);
        out << buf;
      } else {
        out << status_name(r.status);
      }
      out << ',';
      if (r.objective) out << *r.objective;
      out << ',' << status_name(r.status) << '\n';
    }
  }
  return out.str();
}

}  // namespace blockelim

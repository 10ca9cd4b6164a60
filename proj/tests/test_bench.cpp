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

#include <filesystem>
#include <sstream>

#include "blockelim/bench.hpp"
#include "blockelim/commands.hpp"
#include "blockelim/error.hpp"
#include "doctest.h"
#include "support/oracle.hpp"

using namespace blockelim;
namespace bt = blockelim::testing;
namespace fs = std::filesystem;

namespace {

const std::string kData = BLOCKELIM_TEST_DATA;

// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("blockelim_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const std::string path = (dir / name).string();
    if (!content.empty()) write_text_file(path, content);
    return path;
  }
};

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK(median({5.0, 1.0, 9.0, 2.0, 7.0}) == 5.0);
}

TEST_CASE("bench spec parsing") {
  const BenchSpec spec = parse_bench_spec("# n m k b seed modes reps timeout\n"
                                          "48 8 8 1 7 all 5 10\n"
                                          "12 4 2 1 1 mono,lea 1 0.5\n");
  REQUIRE(spec.rows.size() == 2);
  CHECK(spec.rows[0].modes == std::vector<Mode>{Mode::Mono, Mode::Lea, Mode::LeaPkg});
  CHECK(spec.rows[0].repetitions == 5);
  CHECK(spec.rows[1].modes == std::vector<Mode>{Mode::Mono, Mode::Lea});
  CHECK(spec.rows[1].timeout_seconds == 0.5);
  CHECK_THROWS_AS(parse_bench_spec("48 8 8 1 7 all 0 10\n"), ParseError);
  CHECK_THROWS_AS(parse_bench_spec("48 8 8 1 7 all 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_bench_spec("48 8 8 1 7 fast 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_bench_spec("10 3 3 0 7 all 1 1\n"), ParseError);
}

TEST_CASE("bench rows agree across modes") {
  const BenchSpec spec = parse_bench_spec("48 8 8 1 7 all 3 30\n12 4 2 1 1 all 1 30\n");
  const BenchReport report = run_bench(spec);
  REQUIRE(report.rows.size() == 2);
  for (const auto& row : report.rows) {
    CHECK(row.agreement);
    REQUIRE(row.results.size() == 3);
    for (const auto& r : row.results) {
      CHECK(r.status == RunStatus::Optimal);
      CHECK(r.objective == row.results[0].objective);
    }
  }
  CHECK(report.rows[0].results[0].samples.size() == 3);
  CHECK(*report.rows[0].results[0].objective == 189);

  const std::string csv = to_csv(report);
  CHECK(csv.rfind("n,m,k,b,mode,median_seconds,objective,status\n", 0) == 0);
  CHECK(count_lines(csv) == 7);
  CHECK(csv.find("48,8,8,1,lea-pkg,") != std::string::npos);
}

TEST_CASE("parallel bench matches sequential objectives") {
  const BenchSpec spec = parse_bench_spec("24 4 4 1 1 all 1 30\n24 4 4 2 2 all 1 30\n24 4 4 3 3 all 1 30\n");
  BenchOptions par;
  par.jobs = 3;
  const BenchReport a = run_bench(spec);
  const BenchReport b = run_bench(spec, par);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a.rows[i].results[0].objective == b.rows[i].results[0].objective);
}

TEST_CASE("a tiny timeout marks mono but not lea") {
  BenchOptions options;
  options.warmup = false;
  const BenchReport report = run_bench(parse_bench_spec("48 8 8 1 7 mono,lea 1 0.001\n"), options);
  const auto& results = report.rows[0].results;
  CHECK(results[0].status == RunStatus::Timeout);
  CHECK_FALSE(results[0].objective);
  CHECK(results[1].status == RunStatus::Optimal);
  const std::string csv = to_csv(report);
  CHECK(csv.find("48,8,8,1,mono,TIMEOUT,,TIMEOUT") != std::string::npos);
  CHECK(csv.find("48,8,8,1,lea,0.") != std::string::npos);
}

TEST_CASE("node budget is reported, not fatal") {
  BenchOptions options;
  options.limits.node_budget = 10;
  const BenchReport report = run_bench(parse_bench_spec("48 8 8 1 7 mono 1 30\n"), options);
  CHECK(report.rows[0].results[0].status == RunStatus::NodeLimit);
  CHECK(to_csv(report).find("NODE_LIMIT") != std::string::npos);
}

TEST_CASE("gen command") {
  Scratch s("gen");
  GenOptions opts;
  opts.params.n = 12;
  opts.params.m = 4;
  opts.params.k = 2;
  opts.params.b = 1;
  opts.params.seed = 1;
  opts.output = s.file("a.ilp");
  std::ostringstream out, err;
  CHECK(cmd_gen(opts, out, err) == exit_code::kOk);
  CHECK(read_text_file(opts.output) == read_text_file(kData + "/staircase_n12_m4_k2_b1_s1.ilp"));

  opts.params.n = 10;
  opts.params.k = 3;
  opts.params.m = 3;
  CHECK(cmd_gen(opts, out, err) == exit_code::kParse);
  CHECK(err.str().find("k does not divide n") != std::string::npos);
}

TEST_CASE("solve command") {
  Scratch s("solve");
  std::ostringstream out, err;
  SolveOptions opts;
  opts.instance = kData + "/example2.ilp";
  opts.partition = kData + "/example2.part";
  opts.output = s.file("x.sol");
  CHECK(cmd_solve(opts, out, err) == exit_code::kOk);
  CHECK(out.str().rfind("lea optimal 18 ", 0) == 0);
  CHECK(read_text_file(opts.output) == "status optimal\nobj 18\nx 1001111\n");

  std::ostringstream mono_out;
  opts.mode = Mode::Mono;
  opts.output.clear();
  CHECK(cmd_solve(opts, mono_out, err) == exit_code::kOk);
  CHECK(mono_out.str().find("mono optimal 18 ") != std::string::npos);

  std::ostringstream missing_out, missing_err;
  SolveOptions missing;
  missing.instance = kData + "/example2.ilp";
  CHECK(cmd_solve(missing, missing_out, missing_err) == exit_code::kParse);
  CHECK(missing_err.str().find("missing partition") != std::string::npos);

  std::ostringstream auto_out;
  missing.source = PartitionSource::Auto;
  CHECK(cmd_solve(missing, auto_out, err) == exit_code::kOk);
  CHECK(auto_out.str().find("lea optimal 18 ") != std::string::npos);

  std::ostringstream none_out;
  SolveOptions none;
  none.instance = s.file("none.ilp", "ilp 1 1\nobj 1\ncon -1 1 1:1\n");
  none.mode = Mode::Mono;
  CHECK(cmd_solve(none, none_out, err) == exit_code::kInfeasible);
  CHECK(none_out.str().find("mono infeasible - ") != std::string::npos);

  std::ostringstream slow_out;
  SolveOptions slow;
  slow.instance = kData + "/staircase_n48_m8_k8_b2_s7.ilp";
  slow.mode = Mode::Mono;
  slow.timeout_seconds = 1e-4;
  CHECK(cmd_solve(slow, slow_out, err) == exit_code::kTimeout);
  CHECK(slow_out.str().rfind("mono TIMEOUT - ", 0) == 0);

  std::ostringstream broken_err;
  SolveOptions broken;
  broken.instance = s.file("broken.ilp", "ilp 2 1\nobj 1 1\ncon 1 1 3:1\n");
  broken.mode = Mode::Mono;
  CHECK(cmd_solve(broken, out, broken_err) == exit_code::kParse);
  CHECK(broken_err.str().find("line 3") != std::string::npos);

  SolveOptions absent;
  absent.instance = s.file("absent.ilp");
  CHECK(cmd_solve(absent, out, err) == exit_code::kIo);
}

TEST_CASE("graph command") {
  std::ostringstream out, err;
  GraphOptions opts;
  opts.instance = kData + "/example2.ilp";
  CHECK(cmd_graph(opts, out, err) == exit_code::kOk);
  const std::string dot = out.str();
  std::size_t edges = 0;
  for (std::size_t pos = dot.find(" -- "); pos != std::string::npos; pos = dot.find(" -- ", pos + 1)) ++edges;
  CHECK(edges == 9);

  std::ostringstream qout;
  opts.quotient = true;
  opts.partition = kData + "/example2.part";
  CHECK(cmd_graph(opts, qout, err) == exit_code::kOk);
  edges = 0;
  const std::string qdot = qout.str();
  for (std::size_t pos = qdot.find(" -- "); pos != std::string::npos; pos = qdot.find(" -- ", pos + 1)) ++edges;
  CHECK(edges == 3);
}

TEST_CASE("check command") {
  Scratch s("check");
  const std::string inst = kData + "/example2.ilp";
  auto run = [&](const std::string& sol, std::string* text) {
    std::ostringstream out, err;
    const int code = cmd_check({inst, s.file("c.sol", sol)}, out, err);
    *text = out.str() + err.str();
    return code;
  };
  std::string text;
  CHECK(run("status optimal\nobj 18\nx 1001111\n", &text) == exit_code::kOk);
  CHECK(text == "ok\n");
  CHECK(run("status optimal\nobj 17\nx 1001111\n", &text) == exit_code::kViolation);
  CHECK(text.find("objective mismatch: claimed 17, actual 18") != std::string::npos);
  CHECK(run("status optimal\nobj 6\nx 1110000\n", &text) == exit_code::kViolation);
  CHECK(text.find("violated constraint 1") != std::string::npos);
  CHECK(run("status optimal\nobj 0\nx 000\n", &text) == exit_code::kViolation);
  CHECK(run("status infeasible\n", &text) == exit_code::kViolation);
}

TEST_CASE("bench command") {
  Scratch s("bench");
  BenchCommandOptions opts;
  opts.spec = s.file("rows.txt", "12 4 2 1 1 all 1 30\n");
  opts.output = s.file("report.csv");
  std::ostringstream out, err;
  CHECK(cmd_bench(opts, out, err) == exit_code::kOk);
  CHECK(count_lines(read_text_file(opts.output)) == 4);
}

TEST_CASE("exit codes are distinct") {
  const std::vector<int> codes{exit_code::kOk,       exit_code::kParse,    exit_code::kInfeasible,
                               exit_code::kTimeout,  exit_code::kWidthCap, exit_code::kInternal};
  for (std::size_t i = 0; i < codes.size(); ++i)
    for (std::size_t j = i + 1; j < codes.size(); ++j) CHECK(codes[i] != codes[j]);
  CHECK(exit_code_for(ErrorKind::WidthLimit) == exit_code::kWidthCap);
  CHECK(exit_code_for(ErrorKind::Correctness) == exit_code::kInternal);
}

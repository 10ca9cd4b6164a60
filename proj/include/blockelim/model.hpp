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

// Problem and solution types for maximization 0/1 integer programs with
// "<=" rows, plus their line-oriented text formats.
//
// Variables are 0-based everywhere in memory and 1-based in every text
// format.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace blockelim {

using Var = std::int32_t;
using Value = std::int64_t;

/// Bound on sum |c_j| and on sum |a_ij| + |b_i| per row. Keeps every partial
/// objective, table value and row activity inside 64 bits with headroom.
inline constexpr Value kMagnitudeLimit = Value{1} << 62;

struct Term {
  Var var;
  Value coef;

  friend bool operator==(const Term&, const Term&) = default;
};

/// sum_j coef_j x_j <= rhs, support sorted by strictly increasing var.
struct Constraint {
  std::vector<Term> support;
  Value rhs = 0;

  bool contains(Var v) const;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Layout of a staircase instance: k consecutive blocks of variables, the
/// last `b` variables of each block shared into the next block's rows.
struct StaircaseMeta {
  int k = 1;
  int b = 0;
  /// Exclusive 0-based end of each block (equals the 1-based last index).
  std::vector<Var> block_ends;

  Var block_begin(int i) const { return i == 0 ? 0 : block_ends[i - 1]; }
  Var block_end(int i) const { return block_ends[i]; }

  friend bool operator==(const StaircaseMeta&, const StaircaseMeta&) = default;
};

class IlpInstance {
 public:
  /// Validates every invariant; throws Error(Invalid) on violation.
  /// Constraint supports are sorted here; duplicates are rejected.
  IlpInstance(Var n, std::vector<Value> objective,
              std::vector<Constraint> constraints,
              std::optional<StaircaseMeta> meta = std::nullopt);

  Var num_vars() const { return n_; }
  std::size_t num_constraints() const { return constraints_.size(); }
  const std::vector<Value>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::optional<StaircaseMeta>& meta() const { return meta_; }

  friend bool operator==(const IlpInstance&, const IlpInstance&) = default;

 private:
  Var n_;
  std::vector<Value> objective_;
  std::vector<Constraint> constraints_;
  std::optional<StaircaseMeta> meta_;
};

/// Partial or full 0/1 assignment over n variables.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(Var n) : bits_(n, 0), defined_(n, false) {}

  /// Full assignment from a string of '0'/'1'; throws Error(Invalid).
  static Assignment from_bits(std::string_view bits);
  static Assignment from_values(const std::vector<int>& values);

  Var size() const { return static_cast<Var>(bits_.size()); }
  bool defined(Var v) const { return defined_[v]; }
  /// Value of a defined position; throws Error(Invalid) if undefined.
  int at(Var v) const;
  /// Unchecked read, meaningful only for defined positions.
  int operator[](Var v) const { return bits_[v]; }
  void set(Var v, int value) {
    bits_[v] = value ? 1 : 0;
    defined_[v] = true;
  }
  void unset(Var v) {
    bits_[v] = 0;
    defined_[v] = false;
  }
  bool complete() const;
  /// '0'/'1' per position, '?' for undefined ones.
  std::string to_bits() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  std::vector<bool> defined_;
};

struct Evaluation {
  bool feasible = false;
  Value objective = 0;
  /// 0-based indices of violated constraints, ascending.
  std::vector<std::size_t> violated;
};

/// Exact feasibility and objective; throws Error(Invalid) on partial or
/// wrongly sized assignments.
Evaluation evaluate(const IlpInstance& instance, const Assignment& x);

enum class SolveStatus { Optimal, Infeasible };

struct SolveStats {
  std::uint64_t nodes = 0;          // search nodes entered (B&B) or patterns scanned
  std::uint64_t leaves = 0;         // complete block assignments evaluated
  std::uint64_t table_entries = 0;  // local table slots filled
  double seconds = 0.0;

  SolveStats& operator+=(const SolveStats& other);
};

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Assignment> assignment;  // present iff Optimal
  std::optional<Value> objective;        // present iff Optimal
  SolveStats stats;

  static Solution optimal(Assignment x, Value objective, SolveStats stats = {});
  static Solution infeasible(SolveStats stats = {});
};

// Text formats.
//
//   ilp <n> <m> [meta k=<k> b=<b> blocks=<e1,...,ek>]
//   obj <c1> ... <cn>
//   con <b_i> <nnz> <j1>:<a1> ... <jnnz>:<annz>
//
// `blocks` lists the 1-based last variable of each staircase block.
// '#' starts a comment; blank lines are ignored.

/// Throws ParseError (with line number) on malformed text, out-of-range or
/// duplicate indices, and magnitudes that could overflow 64-bit sums.
IlpInstance parse_instance(std::string_view text);
/// Canonical byte-stable rendering (no comments, single spaces, '\n').
std::string serialize_instance(const IlpInstance& instance);

//   status optimal|infeasible
//   obj <value>          (optimal only)
//   x <bits>             (optimal only)
Solution parse_solution(std::string_view text);
std::string serialize_solution(const Solution& solution);

}  // namespace blockelim

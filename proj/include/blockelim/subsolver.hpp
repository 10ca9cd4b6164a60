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

// Exact solvers for block subproblems and for whole instances.
//
// A block subproblem maximizes over the block variables only; every other
// variable it touches has already been fixed by a neighborhood assignment.
// All solvers here return the lexicographically smallest optimal block
// pattern (see tables.hpp), so their answers are interchangeable.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "blockelim/model.hpp"
#include "blockelim/tables.hpp"

namespace blockelim {

enum class Strategy { Exhaustive, BranchAndBound };

struct SolverLimits {
  std::uint64_t node_budget = 100'000'000;
  int exhaustive_cap = 30;  // max variables enumerated by complete enumeration
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Row over block positions: sum coef * x[pos] <= rhs.
struct ReducedRow {
  std::vector<std::pair<int, Value>> terms;
  Value rhs = 0;
};

/// Table restricted to block positions (ascending); values indexed by the
/// packed pattern over `positions`.
struct ReducedTable {
  std::vector<int> positions;
  std::vector<Value> values;
};

struct LocalSubproblem {
  VarSet block;
  std::vector<Value> objective;  // owned c_j, one per block position
  std::vector<ReducedRow> rows;
  std::vector<ReducedTable> tables;
  Value constant = 0;  // contribution of scope-free tables; may be kInfeasible
};

struct LocalOptimum {
  Value h;
  Pattern optimum;

  friend bool operator==(const LocalOptimum&, const LocalOptimum&) = default;
};

/// nullopt means infeasible.
using LocalResult = std::optional<LocalOptimum>;

/// Where a component scope variable lives inside a package.
struct ScopeSlot {
  bool in_block;
  int pos;
};

/// Constraint split into its block columns and its neighborhood columns.
struct PackageRow {
  std::vector<std::pair<int, Value>> block_terms;
  std::vector<std::pair<int, Value>> nb_terms;
  Value rhs = 0;
};

struct PackageComponent {
  std::vector<ScopeSlot> slots;  // one per scope variable, in scope order
  std::vector<Value> values;     // indexed by scope pattern
};

/// The family of 2^|Nb| block subproblems for one block. Members differ only
/// through the neighborhood columns: reduced right-hand sides, and the
/// objective contribution of components whose scope straddles the
/// neighborhood.
struct BlockPackage {
  VarSet block;
  VarSet neighborhood;
  std::vector<Value> objective;  // owned c_j per block position
  std::vector<PackageRow> rows;
  std::vector<PackageComponent> components;
  Value constant = 0;

  std::size_t num_entries() const { return std::size_t{1} << neighborhood.size(); }
  /// The subproblem for one neighborhood assignment.
  LocalSubproblem instantiate(Pattern nb) const;
};

/// Complete enumeration of all 2^|block| patterns.
LocalResult solve_local_exhaustive(const LocalSubproblem& sub, const SolverLimits& limits = {},
                                   SolveStats* stats = nullptr);

/// Depth-first implicit enumeration (0 before 1, ascending block order).
/// Prunes on row infeasibility and when the bound
///   partial + sum of remaining positive c_j + per-table best completion
/// does not beat the incumbent. Exceeding the node budget throws
/// Error(NodeBudget).
LocalResult solve_local_bnb(const LocalSubproblem& sub, const SolverLimits& limits = {},
                            SolveStats* stats = nullptr);

/// The branch-and-bound upper bound once block positions 0..prefix.size()-1
/// are fixed to `prefix`; nullopt when the prefix is already infeasible.
std::optional<Value> local_bound(const LocalSubproblem& sub, std::span<const int> prefix);

class LocalSolver {
 public:
  explicit LocalSolver(Strategy strategy = Strategy::BranchAndBound, SolverLimits limits = {})
      : strategy_(strategy), limits_(std::move(limits)) {}

  Strategy strategy() const { return strategy_; }
  const SolverLimits& limits() const { return limits_; }
  LocalSolver with_deadline(std::chrono::steady_clock::time_point deadline) const;

  LocalResult solve(const LocalSubproblem& sub, SolveStats* stats = nullptr) const;

 private:
  Strategy strategy_;
  SolverLimits limits_;
};

/// Reference path: instantiate and solve every neighborhood entry on its own.
LocalTable solve_block_entrywise(const BlockPackage& pkg, const LocalSolver& solver,
                                 SolveStats* stats = nullptr);

/// Amortized solve of the whole family. Exhaustive: a single sweep over block
/// patterns, updating every neighborhood entry each pattern satisfies.
/// BranchAndBound: entries solved in counting order, each search seeded with
/// the previous entry's optimum as incumbent when it is still feasible (a
/// warm restart across right-hand sides). Both return a table identical to
/// solve_block_entrywise.
LocalTable solve_block_package(const BlockPackage& pkg, Strategy strategy,
                               const SolverLimits& limits = {}, SolveStats* stats = nullptr);

/// The whole instance as one block. Exhaustive requires n <= exhaustive_cap.
Solution solve_monolithic(const IlpInstance& instance, Strategy strategy,
                          const SolverLimits& limits = {});

}  // namespace blockelim

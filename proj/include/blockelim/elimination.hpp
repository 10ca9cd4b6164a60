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

// Block local elimination.
//
// The forward pass walks the blocks of an ordered partition. For block K it
// takes the neighborhood Nb(K) in the current elimination graph and, for
// every assignment of Nb(K), maximizes over the block variables
//
//   sum of c_j (j in K)  +  every live stored table with scope in K u Nb(K)
//
// subject to the not yet used rows that touch K. The optimal values form a
// new stored table over Nb(K); the optimal block assignments are kept for
// the backward pass. Then K is eliminated: Nb(K) becomes a clique, so each
// stored table's scope stays a clique of the elimination graph.
//
// The backward pass reads the stored block optima in reverse order.
//
// Each objective coefficient c_j is counted exactly once, in the subproblem
// of the block that contains x_j.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "blockelim/graph.hpp"
#include "blockelim/model.hpp"
#include "blockelim/subsolver.hpp"
#include "blockelim/tables.hpp"

namespace blockelim {

struct EliminationOptions {
  LocalSolver solver{};
  /// Solve each block's family with solve_block_package instead of entry by entry.
  bool package = false;
  /// Neighborhoods wider than this abort with Error(WidthLimit).
  int width_cap = 25;
};

/// What one block's subproblem family consumed.
struct BlockStep {
  std::vector<std::size_t> constraints;  // original row indices retired here
  std::vector<int> consumed_tables;      // origins of stored tables consumed here
  std::vector<VarSet> live_scopes;       // scopes of stored tables alive after the step
};

struct EliminationRecord {
  Var num_vars = 0;
  std::vector<LocalTable> tables;  // one per processed block, in elimination order
  std::vector<BlockStep> steps;
  std::optional<Value> final_value;  // nullopt: infeasible
  SolveStats stats;

  bool feasible() const { return final_value.has_value(); }
};

/// Throws Error(Invalid) for an invalid partition, Error(WidthLimit) when a
/// neighborhood exceeds the cap; subsolver errors propagate. Stops early
/// (record infeasible) once a block has no feasible entry.
EliminationRecord forward(const IlpInstance& instance, const OrderedPartition& partition,
                          const EliminationOptions& options = {});

/// Throws Error(Invalid) on an infeasible record.
Assignment backward(const EliminationRecord& record);

/// forward + backward, with the recovered assignment re-evaluated against the
/// instance (Error(Correctness) if it disagrees with the forward value).
/// The forward record is copied to `record` when given.
Solution solve_lea(const IlpInstance& instance, const OrderedPartition& partition,
                   const EliminationOptions& options = {}, EliminationRecord* record = nullptr);

struct BlockWidth {
  std::size_t block;      // 0-based index in the partition
  std::size_t width;      // |Nb|
  std::uint64_t entries;  // 2^|Nb|
};

/// Neighborhood sizes from simulating the elimination game; nothing is solved.
std::vector<BlockWidth> table_width_report(const IlpInstance& instance, const OrderedPartition& partition);

}  // namespace blockelim

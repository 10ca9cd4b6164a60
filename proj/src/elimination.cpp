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

#include "blockelim/elimination.hpp"

#include <algorithm>
#include <chrono>

#include "blockelim/error.hpp"

namespace blockelim {

namespace {

using Clock = std::chrono::steady_clock;

void require_valid(const OrderedPartition& partition, Var n) {
  if (auto check = validate_partition(partition, n); !check.ok())
    throw Error(ErrorKind::Invalid, "invalid partition: " + check.message);
}

// Position of every variable inside the current block or neighborhood.
struct Locator {
  std::vector<int> block_pos;
  std::vector<int> nb_pos;

  explicit Locator(Var n) : block_pos(n, -1), nb_pos(n, -1) {}

  void bind(const VarSet& block, const VarSet& nb) {
    for (std::size_t i = 0; i < block.size(); ++i) block_pos[block[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < nb.size(); ++i) nb_pos[nb[i]] = static_cast<int>(i);
  }
  void unbind(const VarSet& block, const VarSet& nb) {
    for (Var v : block) block_pos[v] = -1;
    for (Var v : nb) nb_pos[v] = -1;
  }

  ScopeSlot slot(Var v) const {
    if (block_pos[v] >= 0) return {true, block_pos[v]};
    if (nb_pos[v] >= 0) return {false, nb_pos[v]};
    throw Error(ErrorKind::Correctness,
                "x" + std::to_string(v + 1) + " lies outside the block and its neighborhood");
  }
};

}  // namespace

EliminationRecord forward(const IlpInstance& instance, const OrderedPartition& partition,
                          const EliminationOptions& options) {
  const Var n = instance.num_vars();
  require_valid(partition, n);
  const auto start = Clock::now();

  InteractionGraph graph = build_interaction_graph(instance);
  const auto& rows = instance.constraints();
  std::vector<bool> retired(rows.size(), false);
  std::vector<TableComponent> live;
  Locator locate(n);

  EliminationRecord record;
  record.num_vars = n;
  auto finish = [&]() {
    record.stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return record;
  };

  for (std::size_t j = 0; j < partition.size(); ++j) {
    VarSet block = partition.blocks[j];
    std::sort(block.begin(), block.end());
    VarSet nb = block_neighborhood(graph, block);
    if (static_cast<int>(nb.size()) > options.width_cap)
      throw Error(ErrorKind::WidthLimit, "block " + std::to_string(j + 1) + " has a neighborhood of " +
                                             std::to_string(nb.size()) + " variables, over the cap of " +
                                             std::to_string(options.width_cap));
    locate.bind(block, nb);

    BlockPackage pkg;
    pkg.block = block;
    pkg.neighborhood = nb;
    for (Var v : block) pkg.objective.push_back(instance.objective()[v]);

    BlockStep step;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (retired[i]) continue;
      const auto& support = rows[i].support;
      const bool touches = std::any_of(support.begin(), support.end(),
                                       [&](const Term& t) { return locate.block_pos[t.var] >= 0; });
      if (!touches) continue;
      PackageRow row;
      row.rhs = rows[i].rhs;
      for (const Term& t : support) {
        const ScopeSlot s = locate.slot(t.var);
        (s.in_block ? row.block_terms : row.nb_terms).emplace_back(s.pos, t.coef);
      }
      pkg.rows.push_back(std::move(row));
      retired[i] = true;
      step.constraints.push_back(i);
    }

    // A stored table is absorbed as soon as its scope lies inside the block
    // and its neighborhood: the new table over Nb can carry it. Tables that
    // touch the block always qualify (their scopes are cliques); scope-free
    // ones are picked up by the next block.
    std::vector<TableComponent> kept;
    for (auto& comp : live) {
      const bool absorbed = std::all_of(comp.scope.begin(), comp.scope.end(), [&](Var v) {
        return locate.block_pos[v] >= 0 || locate.nb_pos[v] >= 0;
      });
      if (!absorbed) {
        kept.push_back(std::move(comp));
        continue;
      }
      step.consumed_tables.push_back(comp.origin);
      if (comp.scope.empty()) {
        pkg.constant = (pkg.constant == kInfeasible || comp.values[0] == kInfeasible)
                           ? kInfeasible
                           : pkg.constant + comp.values[0];
        continue;
      }
      PackageComponent pc;
      for (Var v : comp.scope) pc.slots.push_back(locate.slot(v));
      pc.values = std::move(comp.values);
      pkg.components.push_back(std::move(pc));
    }

    LocalTable table = options.package
                           ? solve_block_package(pkg, options.solver.strategy(), options.solver.limits(), &record.stats)
                           : solve_block_entrywise(pkg, options.solver, &record.stats);
    locate.unbind(block, nb);
    eliminate_block_in_place(graph, block);

    const bool dead_end = table.all_infeasible();
    if (!dead_end) kept.push_back(TableComponent{nb, table.values, static_cast<int>(j)});
    live = std::move(kept);
    for (const auto& comp : live) step.live_scopes.push_back(comp.scope);
    record.tables.push_back(std::move(table));
    record.steps.push_back(std::move(step));

    if (dead_end) {
      record.final_value.reset();
      return finish();
    }
  }

  const LocalTable& last = record.tables.back();
  if (!last.neighborhood.empty() || live.size() != 1)
    throw Error(ErrorKind::Correctness, "forward pass ended with unresolved stored tables");
  live.clear();
  record.steps.back().live_scopes.clear();
  if (last.values[0] != kInfeasible) record.final_value = last.values[0];
  return finish();
}

Assignment backward(const EliminationRecord& record) {
  if (!record.feasible()) throw Error(ErrorKind::Invalid, "backward pass needs a feasible record");
  Assignment x(record.num_vars);
  for (auto it = record.tables.rbegin(); it != record.tables.rend(); ++it) {
    const Pattern nb = pack(x, it->neighborhood);
    const auto entry = it->entry(nb);
    if (!entry) throw Error(ErrorKind::Correctness, "backward pass reached an infeasible table entry");
    unpack(entry->optimum, it->block, x);
  }
  return x;
}

Solution solve_lea(const IlpInstance& instance, const OrderedPartition& partition,
                   const EliminationOptions& options, EliminationRecord* record_out) {
  const auto start = Clock::now();
  EliminationRecord record = forward(instance, partition, options);
  if (record_out) *record_out = record;
  SolveStats stats = record.stats;
  if (!record.feasible()) {
    stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return Solution::infeasible(stats);
  }
  Assignment x = backward(record);
  const Evaluation ev = evaluate(instance, x);
  if (!ev.feasible || ev.objective != *record.final_value)
    throw Error(ErrorKind::Correctness, "recovered assignment does not reproduce the forward optimum");
  stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return Solution::optimal(std::move(x), ev.objective, stats);
}

std::vector<BlockWidth> table_width_report(const IlpInstance& instance, const OrderedPartition& partition) {
  require_valid(partition, instance.num_vars());
  InteractionGraph graph = build_interaction_graph(instance);
  std::vector<BlockWidth> report;
  for (std::size_t j = 0; j < partition.size(); ++j) {
    const VarSet nb = block_neighborhood(graph, partition.blocks[j]);
    const std::uint64_t entries = nb.size() < 64 ? std::uint64_t{1} << nb.size() : 0;
    report.push_back({j, nb.size(), entries});
    graph.add_clique(nb);
    for (Var v : partition.blocks[j]) graph.remove_vertex(v);
  }
  return report;
}

}  // namespace blockelim

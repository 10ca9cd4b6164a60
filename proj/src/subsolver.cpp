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

#include "blockelim/subsolver.hpp"

#include <algorithm>
#include <span>

#include "blockelim/error.hpp"

namespace blockelim {

namespace {

using Clock = std::chrono::steady_clock;

constexpr int kMaxPatternWidth = 62;

Value add_values(Value a, Value b) {
  if (a == kInfeasible || b == kInfeasible) return kInfeasible;
  return a + b;
}

class Watchdog {
 public:
  explicit Watchdog(const SolverLimits& limits, bool enforce_budget)
      : limits_(limits), enforce_budget_(enforce_budget) {
    check_deadline();
  }

  void tick() {
    ++nodes_;
    if (enforce_budget_ && nodes_ > limits_.node_budget)
      throw Error(ErrorKind::NodeBudget,
                  "node budget of " + std::to_string(limits_.node_budget) + " exhausted");
    if ((nodes_ & 0xFFF) == 0) check_deadline();
  }

  void check_deadline() const {
    if (limits_.deadline && Clock::now() > *limits_.deadline)
      throw Error(ErrorKind::Timeout, "time limit reached");
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  const SolverLimits& limits_;
  bool enforce_budget_;
  std::uint64_t nodes_ = 0;
};

void check_exhaustive_cap(std::size_t r, const SolverLimits& limits) {
  if (static_cast<long long>(r) > limits.exhaustive_cap || r > kMaxPatternWidth)
    throw Error(ErrorKind::WidthLimit, "block of " + std::to_string(r) +
                                           " variables exceeds the enumeration cap of " +
                                           std::to_string(limits.exhaustive_cap));
}

Pattern table_key(Pattern block_pattern, std::size_t r, const std::vector<int>& positions) {
  Pattern key = 0;
  for (int pos : positions) key = (key << 1) | static_cast<Pattern>(pattern_bit(block_pattern, pos, r));
  return key;
}

// Value of a full block pattern, or kInfeasible.
Value pattern_value(const LocalSubproblem& sub, Pattern p) {
  const std::size_t r = sub.block.size();
  for (const auto& row : sub.rows) {
    Value lhs = 0;
    for (auto [pos, a] : row.terms)
      if (pattern_bit(p, pos, r)) lhs += a;
    if (lhs > row.rhs) return kInfeasible;
  }
  Value total = sub.constant;
  for (std::size_t i = 0; i < r; ++i)
    if (pattern_bit(p, i, r)) total = add_values(total, sub.objective[i]);
  for (const auto& t : sub.tables) total = add_values(total, t.values[table_key(p, r, t.positions)]);
  return total;
}

// Depth-first implicit enumeration over positions 0..r-1, trying 0 before 1.
//
// Row feasibility is tracked through slack_i = rhs_i - lhs_i(fixed)
// - sum of negative coefficients over free positions; a negative slack
// means no completion satisfies the row. Each table keeps, for every
// number k of already-fixed scope positions, the best value over all
// completions of each k-bit prefix, so its bound contribution is a lookup.
class BranchAndBound {
 public:
  BranchAndBound(const LocalSubproblem& sub, const SolverLimits& limits)
      : sub_(sub), r_(static_cast<int>(sub.block.size())), watchdog_(limits, true) {
    columns_.resize(r_);
    slack_.reserve(sub.rows.size());
    for (std::size_t i = 0; i < sub.rows.size(); ++i) {
      Value slack = sub.rows[i].rhs;
      for (auto [pos, a] : sub.rows[i].terms) {
        columns_[pos].push_back({static_cast<int>(i), a});
        if (a < 0) slack -= a;
      }
      slack_.push_back(slack);
    }
    positive_suffix_.assign(r_ + 1, 0);
    for (int p = r_ - 1; p >= 0; --p)
      positive_suffix_[p] = positive_suffix_[p + 1] + std::max<Value>(0, sub.objective[p]);

    table_at_.resize(r_);
    for (std::size_t t = 0; t < sub.tables.size(); ++t) {
      const auto& table = sub.tables[t];
      Levels levels(table.positions.size() + 1);
      levels.back() = table.values;
      for (std::size_t k = table.positions.size(); k-- > 0;) {
        levels[k].resize(std::size_t{1} << k);
        for (std::size_t key = 0; key < levels[k].size(); ++key)
          levels[k][key] = std::max(levels[k + 1][2 * key], levels[k + 1][2 * key + 1]);
      }
      for (int pos : table.positions) table_at_[pos].push_back(static_cast<int>(t));
      tables_.push_back({std::move(levels), 0, 0});
    }
    for (const auto& t : tables_) account(t.current(), +1);
    x_.assign(r_, 0);
  }

  /// Seeds the incumbent with a known feasible pattern of the given value.
  void seed(Pattern pattern, Value value) {
    have_incumbent_ = true;
    seeded_ = true;
    incumbent_value_ = value;
    seed_pattern_ = pattern;
    best_.assign(r_, 0);
    for (int i = 0; i < r_; ++i) best_[i] = static_cast<std::uint8_t>(pattern_bit(pattern, i, r_));
  }

  bool run() {
    const bool rows_ok = std::all_of(slack_.begin(), slack_.end(), [](Value s) { return s >= 0; });
    if (rows_ok && table_sum() != kInfeasible) search(0);
    return have_incumbent_;
  }

  /// Bound after fixing the first prefix.size() positions; nullopt when a
  /// row or table already rules out every completion.
  std::optional<Value> bound_after(std::span<const int> prefix) {
    bool ok = std::all_of(slack_.begin(), slack_.end(), [](Value s) { return s >= 0; }) &&
              table_sum() != kInfeasible;
    for (std::size_t i = 0; i < prefix.size(); ++i) ok = assign(static_cast<int>(i), prefix[i]) && ok;
    if (!ok) return std::nullopt;
    return partial_ + positive_suffix_[prefix.size()] + table_sum();
  }

  Value best_value() const { return incumbent_value_; }
  const std::vector<std::uint8_t>& best() const { return best_; }
  std::uint64_t nodes() const { return watchdog_.nodes(); }
  std::uint64_t leaves() const { return leaves_; }

 private:
  using Levels = std::vector<std::vector<Value>>;
  struct TableState {
    Levels levels;
    Pattern key;
    std::size_t fixed;
    Value current() const { return levels[fixed][key]; }
  };

  bool pruned(Value bound, int depth) const {
    if (!have_incumbent_) return false;
    if (bound < incumbent_value_) return true;
    if (bound > incumbent_value_) return false;
    // Equal bound: a seeded incumbent may still lose to a lexicographically
    // smaller optimum, which can only lie in subtrees not after the seed.
    if (!seeded_) return true;
    return prefix_ > (depth == 0 ? 0 : seed_pattern_ >> (r_ - depth));
  }

  void search(int depth) {
    watchdog_.tick();
    const Value bound = partial_ + positive_suffix_[depth] + table_sum();
    if (pruned(bound, depth)) return;
    if (depth == r_) {
      ++leaves_;
      if (!have_incumbent_ || bound > incumbent_value_ || seeded_) {
        have_incumbent_ = true;
        seeded_ = false;
        incumbent_value_ = bound;
        best_ = x_;
      }
      return;
    }
    for (int v = 0; v <= 1; ++v) {
      if (assign(depth, v)) search(depth + 1);
      unassign(depth, v);
    }
  }

  // Returns false when the assignment makes a row or table infeasible. Must
  // be paired with unassign even then.
  bool assign(int pos, int v) {
    x_[pos] = static_cast<std::uint8_t>(v);
    prefix_ = (prefix_ << 1) | static_cast<Pattern>(v);
    if (v) partial_ += sub_.objective[pos];
    bool ok = true;
    for (auto [row, a] : columns_[pos]) {
      slack_[row] += std::min<Value>(a, 0) - (v ? a : 0);
      if (slack_[row] < 0) ok = false;
    }
    for (int t : table_at_[pos]) {
      auto& table = tables_[t];
      account(table.current(), -1);
      table.key = (table.key << 1) | static_cast<Pattern>(v);
      ++table.fixed;
      account(table.current(), +1);
    }
    return ok && table_sum() != kInfeasible;
  }

  void unassign(int pos, int v) {
    for (int t : table_at_[pos]) {
      auto& table = tables_[t];
      account(table.current(), -1);
      table.key >>= 1;
      --table.fixed;
      account(table.current(), +1);
    }
    for (auto [row, a] : columns_[pos]) slack_[row] -= std::min<Value>(a, 0) - (v ? a : 0);
    if (v) partial_ -= sub_.objective[pos];
    prefix_ >>= 1;
    x_[pos] = 0;
  }

  // Adds (sign +1) or removes (sign -1) one table bound from the running sum.
  void account(Value bound, int sign) {
    if (bound == kInfeasible) infeasible_tables_ += sign;
    else table_bounds_ += sign * bound;
  }

  Value table_sum() const {
    if (infeasible_tables_ > 0 || sub_.constant == kInfeasible) return kInfeasible;
    return sub_.constant + table_bounds_;
  }

  const LocalSubproblem& sub_;
  int r_;
  Watchdog watchdog_;
  std::vector<std::vector<std::pair<int, Value>>> columns_;
  std::vector<Value> slack_;
  std::vector<Value> positive_suffix_;
  std::vector<std::vector<int>> table_at_;
  std::vector<TableState> tables_;
  Value table_bounds_ = 0;
  int infeasible_tables_ = 0;

  std::vector<std::uint8_t> x_;
  Pattern prefix_ = 0;
  Value partial_ = 0;

  bool have_incumbent_ = false;
  bool seeded_ = false;
  Value incumbent_value_ = 0;
  Pattern seed_pattern_ = 0;
  std::vector<std::uint8_t> best_;
  std::uint64_t leaves_ = 0;
};

Pattern to_pattern(const std::vector<std::uint8_t>& bits) {
  Pattern p = 0;
  for (auto b : bits) p = (p << 1) | b;
  return p;
}

LocalResult run_bnb(const LocalSubproblem& sub, const SolverLimits& limits, SolveStats* stats,
                    std::optional<LocalOptimum> seed) {
  if (sub.block.size() > kMaxPatternWidth)
    throw Error(ErrorKind::WidthLimit, "block of " + std::to_string(sub.block.size()) +
                                           " variables exceeds the pattern width of 62");
  BranchAndBound search(sub, limits);
  if (seed) search.seed(seed->optimum, seed->h);
  const bool found = search.run();
  if (stats) {
    stats->nodes += search.nodes();
    stats->leaves += search.leaves();
  }
  if (!found) return std::nullopt;
  return LocalOptimum{search.best_value(), to_pattern(search.best())};
}

LocalSubproblem whole_instance(const IlpInstance& instance) {
  LocalSubproblem sub;
  sub.block.resize(instance.num_vars());
  for (Var v = 0; v < instance.num_vars(); ++v) sub.block[v] = v;
  sub.objective = instance.objective();
  for (const auto& row : instance.constraints()) {
    ReducedRow reduced;
    reduced.rhs = row.rhs;
    for (const Term& t : row.support) reduced.terms.emplace_back(t.var, t.coef);
    sub.rows.push_back(std::move(reduced));
  }
  return sub;
}

}  // namespace

LocalSubproblem BlockPackage::instantiate(Pattern nb) const {
  const std::size_t w = neighborhood.size();
  LocalSubproblem sub;
  sub.block = block;
  sub.objective = objective;
  sub.constant = constant;
  for (const auto& row : rows) {
    ReducedRow reduced;
    reduced.terms = row.block_terms;
    reduced.rhs = row.rhs;
    for (auto [pos, a] : row.nb_terms)
      if (pattern_bit(nb, pos, w)) reduced.rhs -= a;
    sub.rows.push_back(std::move(reduced));
  }
  for (const auto& comp : components) {
    ReducedTable table;
    for (const auto& slot : comp.slots)
      if (slot.in_block) table.positions.push_back(slot.pos);
    const std::size_t t = table.positions.size();
    table.values.resize(std::size_t{1} << t);
    for (Pattern sub_key = 0; sub_key < table.values.size(); ++sub_key) {
      Pattern key = 0;
      std::size_t next_block = 0;
      for (const auto& slot : comp.slots) {
        const int bit = slot.in_block ? pattern_bit(sub_key, next_block++, t) : pattern_bit(nb, slot.pos, w);
        key = (key << 1) | static_cast<Pattern>(bit);
      }
      table.values[sub_key] = comp.values[key];
    }
    if (t == 0) sub.constant = add_values(sub.constant, table.values[0]);
    else sub.tables.push_back(std::move(table));
  }
  return sub;
}

LocalResult solve_local_exhaustive(const LocalSubproblem& sub, const SolverLimits& limits,
                                   SolveStats* stats) {
  const std::size_t r = sub.block.size();
  check_exhaustive_cap(r, limits);
  Watchdog watchdog(limits, false);
  LocalResult best;
  const Pattern count = Pattern{1} << r;
  for (Pattern p = 0; p < count; ++p) {
    watchdog.tick();
    const Value v = pattern_value(sub, p);
    if (v != kInfeasible && (!best || v > best->h)) best = LocalOptimum{v, p};
  }
  if (stats) {
    stats->nodes += count;
    stats->leaves += count;
  }
  return best;
}

LocalResult solve_local_bnb(const LocalSubproblem& sub, const SolverLimits& limits, SolveStats* stats) {
  return run_bnb(sub, limits, stats, std::nullopt);
}

std::optional<Value> local_bound(const LocalSubproblem& sub, std::span<const int> prefix) {
  if (prefix.size() > sub.block.size()) throw Error(ErrorKind::Invalid, "prefix longer than the block");
  BranchAndBound search(sub, SolverLimits{});
  return search.bound_after(prefix);
}

LocalSolver LocalSolver::with_deadline(std::chrono::steady_clock::time_point deadline) const {
  SolverLimits limits = limits_;
  limits.deadline = deadline;
  return LocalSolver(strategy_, limits);
}

LocalResult LocalSolver::solve(const LocalSubproblem& sub, SolveStats* stats) const {
  return strategy_ == Strategy::Exhaustive ? solve_local_exhaustive(sub, limits_, stats)
                                           : solve_local_bnb(sub, limits_, stats);
}

LocalTable solve_block_entrywise(const BlockPackage& pkg, const LocalSolver& solver, SolveStats* stats) {
  LocalTable table{pkg.block, pkg.neighborhood, std::vector<Value>(pkg.num_entries(), kInfeasible),
                   std::vector<Pattern>(pkg.num_entries(), 0)};
  for (Pattern nb = 0; nb < pkg.num_entries(); ++nb) {
    if (auto result = solver.solve(pkg.instantiate(nb), stats)) {
      table.values[nb] = result->h;
      table.optima[nb] = result->optimum;
    }
  }
  if (stats) stats->table_entries += pkg.num_entries();
  return table;
}

namespace {

LocalTable sweep_package(const BlockPackage& pkg, const SolverLimits& limits, SolveStats* stats) {
  const std::size_t r = pkg.block.size();
  const std::size_t w = pkg.neighborhood.size();
  check_exhaustive_cap(r, limits);
  const std::size_t entries = pkg.num_entries();
  const std::size_t m = pkg.rows.size();

  // Neighborhood side, once per entry: remaining rhs of every row and the
  // neighborhood bits of every component key.
  std::vector<Value> room(entries * m);
  std::vector<Pattern> nb_key(entries * pkg.components.size());
  for (Pattern nb = 0; nb < entries; ++nb) {
    for (std::size_t i = 0; i < m; ++i) {
      Value rhs = pkg.rows[i].rhs;
      for (auto [pos, a] : pkg.rows[i].nb_terms)
        if (pattern_bit(nb, pos, w)) rhs -= a;
      room[nb * m + i] = rhs;
    }
    for (std::size_t c = 0; c < pkg.components.size(); ++c) {
      const auto& slots = pkg.components[c].slots;
      Pattern key = 0;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (!slots[s].in_block && pattern_bit(nb, slots[s].pos, w))
          key |= Pattern{1} << (slots.size() - 1 - s);
      nb_key[nb * pkg.components.size() + c] = key;
    }
  }

  LocalTable table{pkg.block, pkg.neighborhood, std::vector<Value>(entries, kInfeasible),
                   std::vector<Pattern>(entries, 0)};
  Watchdog watchdog(limits, false);
  std::vector<Value> usage(m);
  std::vector<Pattern> block_key(pkg.components.size());
  const Pattern count = Pattern{1} << r;
  for (Pattern p = 0; p < count; ++p) {
    watchdog.tick();
    // Block side, once per pattern.
    Value own = pkg.constant;
    for (std::size_t i = 0; i < r; ++i)
      if (pattern_bit(p, i, r)) own = add_values(own, pkg.objective[i]);
    if (own == kInfeasible) continue;
    for (std::size_t i = 0; i < m; ++i) {
      Value lhs = 0;
      for (auto [pos, a] : pkg.rows[i].block_terms)
        if (pattern_bit(p, pos, r)) lhs += a;
      usage[i] = lhs;
    }
    for (std::size_t c = 0; c < pkg.components.size(); ++c) {
      const auto& slots = pkg.components[c].slots;
      Pattern key = 0;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (slots[s].in_block && pattern_bit(p, slots[s].pos, r))
          key |= Pattern{1} << (slots.size() - 1 - s);
      block_key[c] = key;
    }

    for (Pattern nb = 0; nb < entries; ++nb) {
      bool feasible = true;
      for (std::size_t i = 0; i < m && feasible; ++i) feasible = usage[i] <= room[nb * m + i];
      if (!feasible) continue;
      Value total = own;
      for (std::size_t c = 0; c < pkg.components.size() && total != kInfeasible; ++c)
        total = add_values(total, pkg.components[c].values[block_key[c] | nb_key[nb * pkg.components.size() + c]]);
      if (total != kInfeasible && total > table.values[nb]) {
        table.values[nb] = total;
        table.optima[nb] = p;
      }
    }
  }
  if (stats) {
    stats->nodes += count;
    stats->leaves += count * entries;
    stats->table_entries += entries;
  }
  return table;
}

LocalTable warm_started_package(const BlockPackage& pkg, const SolverLimits& limits, SolveStats* stats) {
  LocalTable table{pkg.block, pkg.neighborhood, std::vector<Value>(pkg.num_entries(), kInfeasible),
                   std::vector<Pattern>(pkg.num_entries(), 0)};
  std::optional<LocalOptimum> previous;
  for (Pattern nb = 0; nb < pkg.num_entries(); ++nb) {
    const LocalSubproblem sub = pkg.instantiate(nb);
    std::optional<LocalOptimum> seed;
    if (previous) {
      const Value v = pattern_value(sub, previous->optimum);
      if (v != kInfeasible) seed = LocalOptimum{v, previous->optimum};
    }
    if (auto result = run_bnb(sub, limits, stats, seed)) {
      table.values[nb] = result->h;
      table.optima[nb] = result->optimum;
      previous = result;
    }
  }
  if (stats) stats->table_entries += pkg.num_entries();
  return table;
}

}  // namespace

LocalTable solve_block_package(const BlockPackage& pkg, Strategy strategy, const SolverLimits& limits,
                               SolveStats* stats) {
  return strategy == Strategy::Exhaustive ? sweep_package(pkg, limits, stats)
                                          : warm_started_package(pkg, limits, stats);
}

Solution solve_monolithic(const IlpInstance& instance, Strategy strategy, const SolverLimits& limits) {
  const auto start = Clock::now();
  const LocalSubproblem sub = whole_instance(instance);
  SolveStats stats;
  Assignment x(instance.num_vars());
  std::optional<Value> value;
  if (strategy == Strategy::Exhaustive) {
    if (auto best = solve_local_exhaustive(sub, limits, &stats)) {
      unpack(best->optimum, sub.block, x);
      value = best->h;
    }
  } else {
    BranchAndBound search(sub, limits);
    if (search.run()) {
      for (Var v = 0; v < instance.num_vars(); ++v) x.set(v, search.best()[v]);
      value = search.best_value();
    }
    stats.nodes = search.nodes();
    stats.leaves = search.leaves();
  }
  stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (!value) return Solution::infeasible(stats);
  return Solution::optimal(std::move(x), *value, stats);
}

}  // namespace blockelim

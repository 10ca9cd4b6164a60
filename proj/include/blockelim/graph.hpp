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

// Variable interaction graphs and the block elimination game on them.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blockelim/model.hpp"

namespace blockelim {

/// Sorted, duplicate-free set of variables.
using VarSet = std::vector<Var>;

/// Undirected simple graph on variables with an "alive" mask. Eliminated
/// vertices keep their index but have no incident edges.
class InteractionGraph {
 public:
  InteractionGraph() = default;
  explicit InteractionGraph(Var n) : adj_(n), alive_(n, true) {}

  Var num_vertices() const { return static_cast<Var>(adj_.size()); }
  bool alive(Var v) const { return alive_[v]; }
  const VarSet& neighbors(Var v) const { return adj_[v]; }
  bool adjacent(Var u, Var v) const;
  std::size_t degree(Var v) const { return adj_[v].size(); }

  /// Ignores self-loops and existing edges. Both ends must be alive.
  void add_edge(Var u, Var v);
  void add_clique(std::span<const Var> vertices);
  /// Drops all incident edges and marks the vertex dead.
  void remove_vertex(Var v);

  std::vector<Var> alive_vertices() const;
  std::size_t num_alive() const;
  std::size_t edge_count() const;
  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<Var, Var>> edges() const;

  friend bool operator==(const InteractionGraph&, const InteractionGraph&) = default;

 private:
  std::vector<VarSet> adj_;
  std::vector<bool> alive_;
};

/// Ordered sequence of disjoint nonempty blocks, eliminated front to back.
struct OrderedPartition {
  std::vector<VarSet> blocks;

  std::size_t size() const { return blocks.size(); }

  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
};

/// Graph on block indices 0..p-1.
struct QuotientGraph {
  int num_blocks = 0;
  /// (i, k) with i < k, sorted.
  std::vector<std::pair<int, int>> edges;

  friend bool operator==(const QuotientGraph&, const QuotientGraph&) = default;
};

enum class PartitionViolation { None, EmptyBlock, OutOfRange, Overlap, Missing, Eliminated };

struct PartitionCheck {
  PartitionViolation violation = PartitionViolation::None;
  std::size_t block = 0;  // offending block (0-based), where meaningful
  Var variable = -1;      // offending variable (0-based), where meaningful
  std::string message;

  bool ok() const { return violation == PartitionViolation::None; }
};

/// Each constraint support induces a clique.
InteractionGraph build_interaction_graph(const IlpInstance& instance);

/// Alive vertices adjacent to some member of `block`, minus the block.
/// Throws Error(Invalid) if the block holds an eliminated vertex.
VarSet block_neighborhood(const InteractionGraph& graph, std::span<const Var> block);

/// One step of the block elimination game: the block's neighborhood becomes
/// a clique, then the block's vertices are removed.
void eliminate_block_in_place(InteractionGraph& graph, std::span<const Var> block);
InteractionGraph eliminate_block(InteractionGraph graph, std::span<const Var> block);

/// G^0, G^1, ..., G^p for a partition over the alive vertices.
std::vector<InteractionGraph> elimination_sequence(const InteractionGraph& graph,
                                                   const OrderedPartition& partition);

/// Throws Error(Invalid) unless the partition covers exactly the alive
/// vertices of `graph`.
QuotientGraph quotient_graph(const InteractionGraph& graph, const OrderedPartition& partition);

/// Classes of alive vertices with equal closed neighborhoods, ordered by
/// their smallest member.
OrderedPartition find_indistinguishable_blocks(const InteractionGraph& graph);

/// Disjointness, nonemptiness and coverage of 0..n-1; reports the first
/// violation found scanning blocks in order.
PartitionCheck validate_partition(const OrderedPartition& partition, Var n);
/// Same checks against the alive vertices of a graph.
PartitionCheck validate_partition(const OrderedPartition& partition, const InteractionGraph& graph);

/// Undirected DOT, vertices labelled x<j> (1-based).
std::string to_dot(const InteractionGraph& graph);
/// Undirected DOT, vertices labelled X<l> (1-based).
std::string to_dot(const QuotientGraph& graph);

/// Partition file: one `block <v1> <v2> ...` line per block (1-based), in
/// elimination order; '#' comments.
OrderedPartition parse_partition(std::string_view text);
std::string serialize_partition(const OrderedPartition& partition);

}  // namespace blockelim

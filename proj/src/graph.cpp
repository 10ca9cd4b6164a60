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

#include "blockelim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "blockelim/error.hpp"

namespace blockelim {

namespace {

void insert_sorted(VarSet& set, Var v) {
  auto it = std::lower_bound(set.begin(), set.end(), v);
  if (it == set.end() || *it != v) set.insert(it, v);
}

void erase_sorted(VarSet& set, Var v) {
  auto it = std::lower_bound(set.begin(), set.end(), v);
  if (it != set.end() && *it == v) set.erase(it);
}

std::string var_name(Var v) { return "x" + std::to_string(v + 1); }

}  // namespace

bool InteractionGraph::adjacent(Var u, Var v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

void InteractionGraph::add_edge(Var u, Var v) {
  if (u == v) return;
  if (!alive_[u] || !alive_[v])
    throw Error(ErrorKind::Invalid, "edge touches eliminated vertex");
  insert_sorted(adj_[u], v);
  insert_sorted(adj_[v], u);
}

void InteractionGraph::add_clique(std::span<const Var> vertices) {
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b) add_edge(vertices[a], vertices[b]);
}

void InteractionGraph::remove_vertex(Var v) {
  for (Var u : adj_[v]) erase_sorted(adj_[u], v);
  adj_[v].clear();
  alive_[v] = false;
}

std::vector<Var> InteractionGraph::alive_vertices() const {
  std::vector<Var> out;
  for (Var v = 0; v < num_vertices(); ++v)
    if (alive_[v]) out.push_back(v);
  return out;
}

std::size_t InteractionGraph::num_alive() const {
  return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), true));
}

std::size_t InteractionGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& a : adj_) twice += a.size();
  return twice / 2;
}

std::vector<std::pair<Var, Var>> InteractionGraph::edges() const {
  std::vector<std::pair<Var, Var>> out;
  for (Var u = 0; u < num_vertices(); ++u)
    for (Var v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

InteractionGraph build_interaction_graph(const IlpInstance& instance) {
  InteractionGraph g(instance.num_vars());
  std::vector<Var> support;
  for (const auto& row : instance.constraints()) {
    support.clear();
    for (const Term& t : row.support) support.push_back(t.var);
    g.add_clique(support);
  }
  return g;
}

VarSet block_neighborhood(const InteractionGraph& graph, std::span<const Var> block) {
  std::vector<bool> in_block(graph.num_vertices(), false);
  for (Var v : block) {
    if (v < 0 || v >= graph.num_vertices() || !graph.alive(v))
      throw Error(ErrorKind::Invalid, "block contains eliminated or unknown vertex " + var_name(v));
    in_block[v] = true;
  }
  VarSet nb;
  for (Var v : block)
    for (Var u : graph.neighbors(v))
      if (!in_block[u]) nb.push_back(u);
  std::sort(nb.begin(), nb.end());
  nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  return nb;
}

void eliminate_block_in_place(InteractionGraph& graph, std::span<const Var> block) {
  const VarSet nb = block_neighborhood(graph, block);
  graph.add_clique(nb);
  for (Var v : block) graph.remove_vertex(v);
}

InteractionGraph eliminate_block(InteractionGraph graph, std::span<const Var> block) {
  eliminate_block_in_place(graph, block);
  return graph;
}

std::vector<InteractionGraph> elimination_sequence(const InteractionGraph& graph,
                                                   const OrderedPartition& partition) {
  if (auto check = validate_partition(partition, graph); !check.ok())
    throw Error(ErrorKind::Invalid, check.message);
  std::vector<InteractionGraph> seq;
  seq.reserve(partition.size() + 1);
  seq.push_back(graph);
  for (const auto& block : partition.blocks) seq.push_back(eliminate_block(seq.back(), block));
  return seq;
}

QuotientGraph quotient_graph(const InteractionGraph& graph, const OrderedPartition& partition) {
  if (auto check = validate_partition(partition, graph); !check.ok())
    throw Error(ErrorKind::Invalid, check.message);
  std::vector<int> owner(graph.num_vertices(), -1);
  for (std::size_t l = 0; l < partition.size(); ++l)
    for (Var v : partition.blocks[l]) owner[v] = static_cast<int>(l);

  QuotientGraph q;
  q.num_blocks = static_cast<int>(partition.size());
  for (auto [u, v] : graph.edges()) {
    int a = owner[u], b = owner[v];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    q.edges.emplace_back(a, b);
  }
  std::sort(q.edges.begin(), q.edges.end());
  q.edges.erase(std::unique(q.edges.begin(), q.edges.end()), q.edges.end());
  return q;
}

OrderedPartition find_indistinguishable_blocks(const InteractionGraph& graph) {
  std::map<VarSet, std::size_t> class_of;
  OrderedPartition out;
  for (Var v = 0; v < graph.num_vertices(); ++v) {
    if (!graph.alive(v)) continue;
    VarSet closed = graph.neighbors(v);
    insert_sorted(closed, v);
    auto [it, inserted] = class_of.emplace(std::move(closed), out.blocks.size());
    if (inserted) out.blocks.emplace_back();
    out.blocks[it->second].push_back(v);
  }
  return out;
}

namespace {

PartitionCheck check_partition(const OrderedPartition& partition, Var n,
                               const InteractionGraph* graph) {
  std::vector<int> seen(n, -1);
  for (std::size_t l = 0; l < partition.size(); ++l) {
    const auto& block = partition.blocks[l];
    if (block.empty())
      return {PartitionViolation::EmptyBlock, l, -1, "block " + std::to_string(l + 1) + " is empty"};
    for (Var v : block) {
      if (v < 0 || v >= n)
        return {PartitionViolation::OutOfRange, l, v,
                "block " + std::to_string(l + 1) + " references variable " + std::to_string(v + 1) +
                    " outside 1.." + std::to_string(n)};
      if (graph && !graph->alive(v))
        return {PartitionViolation::Eliminated, l, v,
                "block " + std::to_string(l + 1) + " contains eliminated variable " + var_name(v)};
      if (seen[v] >= 0)
        return {PartitionViolation::Overlap, l, v,
                "variable " + var_name(v) + " appears in blocks " + std::to_string(seen[v] + 1) +
                    " and " + std::to_string(l + 1)};
      seen[v] = static_cast<int>(l);
    }
  }
  for (Var v = 0; v < n; ++v) {
    if (graph && !graph->alive(v)) continue;
    if (seen[v] < 0)
      return {PartitionViolation::Missing, 0, v, "variable " + var_name(v) + " is not covered by any block"};
  }
  return {};
}

}  // namespace

PartitionCheck validate_partition(const OrderedPartition& partition, Var n) {
  return check_partition(partition, n, nullptr);
}

PartitionCheck validate_partition(const OrderedPartition& partition, const InteractionGraph& graph) {
  return check_partition(partition, graph.num_vertices(), &graph);
}

std::string to_dot(const InteractionGraph& graph) {
  std::ostringstream out;
  out << "graph interaction {\n";
  for (Var v : graph.alive_vertices()) out << "  " << var_name(v) << ";\n";
  for (auto [u, v] : graph.edges()) out << "  " << var_name(u) << " -- " << var_name(v) << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const QuotientGraph& graph) {
  std::ostringstream out;
  out << "graph quotient {\n";
  for (int l = 0; l < graph.num_blocks; ++l) out << "  X" << (l + 1) << ";\n";
  for (auto [a, b] : graph.edges) out << "  X" << (a + 1) << " -- X" << (b + 1) << ";\n";
  out << "}\n";
  return out.str();
}

OrderedPartition parse_partition(std::string_view text) {
  OrderedPartition partition;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream in(line);
    std::string word;
    if (!(in >> word)) continue;
    if (word != "block") throw ParseError(number, "expected 'block <v1> <v2> ...'");
    VarSet block;
    std::string tok;
    while (in >> tok) {
      Var v{};
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 1)
        throw ParseError(number, "expected positive variable index, got '" + tok + "'");
      block.push_back(v - 1);
    }
    if (block.empty()) throw ParseError(number, "empty block");
    std::sort(block.begin(), block.end());
    if (std::adjacent_find(block.begin(), block.end()) != block.end())
      throw ParseError(number, "duplicate variable within block");
    partition.blocks.push_back(std::move(block));
  }
  return partition;
}

std::string serialize_partition(const OrderedPartition& partition) {
  std::ostringstream out;
  for (const auto& block : partition.blocks) {
    out << "block";
    for (Var v : block) out << ' ' << (v + 1);
    out << '\n';
  }
  return out.str();
}

}  // namespace blockelim

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

// Dense tables keyed by packed assignments of a sorted variable set.
//
// Packing convention: for a sorted set v_0 < v_1 < ... < v_{w-1}, the
// pattern stores v_0 in the most significant of its w bits. Counting order
// of patterns is therefore lexicographic order of (x_{v_0}, ..., x_{v_{w-1}})
// with 0 before 1, and "smallest pattern" is the lexicographic tie-break.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blockelim/graph.hpp"
#include "blockelim/model.hpp"

namespace blockelim {

using Pattern = std::uint64_t;

/// Marker for infeasible table slots. Absorbing under addition.
inline constexpr Value kInfeasible = std::numeric_limits<Value>::min();

inline int pattern_bit(Pattern p, std::size_t i, std::size_t width) {
  return static_cast<int>((p >> (width - 1 - i)) & 1u);
}

/// Pattern of `vars` (in the given order) read from a full-enough assignment.
Pattern pack(const Assignment& x, std::span<const Var> vars);
/// Writes the bits of `p` onto `vars` in `x`.
void unpack(Pattern p, std::span<const Var> vars, Assignment& x);

/// A stored function h(scope) produced by eliminating a block.
struct TableComponent {
  VarSet scope;
  std::vector<Value> values;  // 2^|scope| slots, kInfeasible allowed
  int origin = -1;            // index of the block whose elimination produced it
};

struct LocalEntry {
  Value h;
  Pattern optimum;  // over the block, packed per the convention above

  friend bool operator==(const LocalEntry&, const LocalEntry&) = default;
};

/// Optimal block value and block assignment for every neighborhood
/// assignment.
struct LocalTable {
  VarSet block;
  VarSet neighborhood;
  std::vector<Value> values;    // kInfeasible where the subproblem is infeasible
  std::vector<Pattern> optima;  // meaningful only where values[k] != kInfeasible

  std::size_t size() const { return values.size(); }
  std::optional<LocalEntry> entry(Pattern nb) const;
  bool all_infeasible() const;

  friend bool operator==(const LocalTable&, const LocalTable&) = default;
};

/// Text dump in the layout "neighborhood bits | h | block optimum bits":
///
///   table 2 block {x1,x2,x4} nb {x3}
///   x3 | h | x1* x2* x4*
///   0 | 11 | 1 0 1
///   1 | 6 | 1 0 0
///
/// Infeasible rows print "infeasible" in the h column and '-' for the optimum.
std::string format_table(const LocalTable& table, std::size_t index);

}  // namespace blockelim

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

#include "blockelim/tables.hpp"

#include <algorithm>
#include <sstream>

namespace blockelim {

Pattern pack(const Assignment& x, std::span<const Var> vars) {
  Pattern p = 0;
  for (Var v : vars) p = (p << 1) | static_cast<Pattern>(x.at(v));
  return p;
}

void unpack(Pattern p, std::span<const Var> vars, Assignment& x) {
  for (std::size_t i = 0; i < vars.size(); ++i) x.set(vars[i], pattern_bit(p, i, vars.size()));
}

std::optional<LocalEntry> LocalTable::entry(Pattern nb) const {
  if (values[nb] == kInfeasible) return std::nullopt;
  return LocalEntry{values[nb], optima[nb]};
}

bool LocalTable::all_infeasible() const {
  return std::all_of(values.begin(), values.end(), [](Value v) { return v == kInfeasible; });
}

namespace {

std::string set_name(const VarSet& vars) {
  std::string s = "{";
  for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? ",x" : "x") + std::to_string(vars[i] + 1);
  return s + "}";
}

}  // namespace

std::string format_table(const LocalTable& table, std::size_t index) {
  std::ostringstream out;
  const std::size_t w = table.neighborhood.size();
  const std::size_t r = table.block.size();
  out << "table " << index << " block " << set_name(table.block) << " nb " << set_name(table.neighborhood) << '\n';
  for (std::size_t i = 0; i < w; ++i) out << (i ? " " : "") << 'x' << table.neighborhood[i] + 1;
  out << (w ? " " : "") << "| h |";
  for (Var v : table.block) out << " x" << v + 1 << '*';
  out << '\n';
  for (Pattern nb = 0; nb < table.size(); ++nb) {
    for (std::size_t i = 0; i < w; ++i) out << (i ? " " : "") << pattern_bit(nb, i, w);
    out << (w ? " " : "") << "| ";
    if (table.values[nb] == kInfeasible) {
      out << "infeasible |";
      for (std::size_t i = 0; i < r; ++i) out << " -";
    } else {
      out << table.values[nb] << " |";
      for (std::size_t i = 0; i < r; ++i) out << ' ' << pattern_bit(table.optima[nb], i, r);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace blockelim

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

#include "blockelim/generator.hpp"

#include "blockelim/error.hpp"

namespace blockelim {

std::pair<std::uint64_t, std::uint64_t> splitmix64_next(std::uint64_t state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return {state, z ^ (z >> 31)};
}

std::uint64_t SplitMix64::next() {
  auto [s, out] = splitmix64_next(state);
  state = s;
  return out;
}

void validate_params(const GeneratorParams& p) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::Invalid, what); };
  if (p.k < 1) fail("k must be at least 1");
  if (p.n < 1) fail("n must be positive");
  if (p.m < 0) fail("m must be nonnegative");
  if (p.n % p.k != 0) fail("k does not divide n");
  if (p.m % p.k != 0) fail("k does not divide m");
  if (p.b < 0) fail("b must be nonnegative");
  if (p.n / p.k <= p.b) fail("block size n/k must exceed the separator size b");
  if (p.coeff_min > p.coeff_max) fail("empty coefficient range");
  if (p.rhs_den <= 0 || p.rhs_num <= 0 || p.rhs_num >= p.rhs_den) fail("rhs factor must lie in (0,1)");
}

namespace {

Value floor_div(Value a, Value d) {
  Value q = a / d;
  if ((a % d != 0) && ((a < 0) != (d < 0))) --q;
  return q;
}

}  // namespace

IlpInstance generate(const GeneratorParams& p) {
  validate_params(p);
  SplitMix64 rng{p.seed};
  const std::uint64_t span = static_cast<std::uint64_t>(p.coeff_max - p.coeff_min) + 1;
  auto draw = [&]() { return p.coeff_min + static_cast<Value>(rng.next() % span); };

  std::vector<Value> objective(p.n);
  for (auto& c : objective) c = draw();

  const Var size = p.n / p.k;
  const int rows_per_block = p.m / p.k;
  StaircaseMeta meta;
  meta.k = p.k;
  meta.b = p.b;
  std::vector<Constraint> rows;
  rows.reserve(p.m);
  for (int blk = 0; blk < p.k; ++blk) {
    const Var first = blk * size;
    meta.block_ends.push_back(first + size);
    const Var lead = blk > 0 ? first - p.b : first;
    for (int r = 0; r < rows_per_block; ++r) {
      Constraint row;
      Value total = 0;
      for (Var v = lead; v < first + size; ++v) {
        row.support.push_back({v, draw()});
        total += row.support.back().coef;
      }
      row.rhs = floor_div(p.rhs_num * total, p.rhs_den);
      rows.push_back(std::move(row));
    }
  }
  return IlpInstance(p.n, std::move(objective), std::move(rows), std::move(meta));
}

OrderedPartition staircase_partition(const StaircaseMeta& meta) {
  OrderedPartition partition;
  for (int i = 0; i < meta.k; ++i) {
    VarSet block;
    if (i > 0)
      for (Var v = meta.block_end(i - 1) - meta.b; v < meta.block_end(i - 1); ++v) block.push_back(v);
    const Var shed = (i + 1 < meta.k) ? meta.b : 0;
    for (Var v = meta.block_begin(i); v < meta.block_end(i) - shed; ++v) block.push_back(v);
    partition.blocks.push_back(std::move(block));
  }
  return partition;
}

}  // namespace blockelim

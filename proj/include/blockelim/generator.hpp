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

// Deterministic staircase (quasi-block) instance generator.
//
// Bit-exact format of the random stream:
//   * one splitmix64 state, initialized to the seed;
//   * every draw advances the state once and maps the output u to
//     lo + (u mod (hi - lo + 1)) (plain modulo reduction, no rejection);
//   * draw order: c_1..c_n, then each constraint in order, its coefficients
//     in ascending variable order. Right-hand sides are not drawn:
//     b_i = floor(rhs_num * sum_j a_ij / rhs_den).

#pragma once

#include <cstdint>
#include <utility>

#include "blockelim/graph.hpp"
#include "blockelim/model.hpp"

namespace blockelim {

struct SplitMix64 {
  std::uint64_t state;

  /// Advances the state and returns the mixed output.
  std::uint64_t next();
};

/// (new state, output) for one step from `state`.
std::pair<std::uint64_t, std::uint64_t> splitmix64_next(std::uint64_t state);

struct GeneratorParams {
  Var n = 0;
  int m = 0;
  int k = 1;
  int b = 0;
  std::uint64_t seed = 0;
  Value coeff_min = 1;
  Value coeff_max = 10;
  Value rhs_num = 3;
  Value rhs_den = 5;
};

/// Throws Error(Invalid) describing the first violated requirement:
/// k >= 1, k | n, k | m, n/k > b >= 0, coeff_min <= coeff_max,
/// 0 < rhs_num < rhs_den.
void validate_params(const GeneratorParams& params);

/// Block i (0-based) spans variables [i*n/k, (i+1)*n/k). Its m/k rows cover
/// its own variables plus, for i > 0, the last b variables of block i-1.
IlpInstance generate(const GeneratorParams& params);

/// Elimination order for a staircase: every block except the last sheds its
/// separator to the next block, so each neighborhood is a separator.
OrderedPartition staircase_partition(const StaircaseMeta& meta);

}  // namespace blockelim

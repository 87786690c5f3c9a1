// Copyright 2026 The mechlab Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mechlab/rational.hpp"

namespace mechlab {

using WeightMatrix = std::vector<std::vector<Rational>>;

struct MatchingResult {
  /// Row -> column in the VCG matching, -1 when unmatched.
  std::vector<int> match;
  /// VCG price per matched row for which a price was requested.
  std::vector<std::optional<Rational>> prices;
  /// Total weight of the VCG matching.
  Rational weight;
  /// Row -> column after unmatched rows are paired uniformly with unmatched columns.
  std::vector<int> completion;

  bool matched(std::size_t row) const { return match[row] >= 0; }
};

/// Maximum-weight matching on a square matrix where any edge may be left out.
/// Among optimal assignments of max(w, 0) the lexicographically smallest
/// (row 0's column first) is kept; rows paired through a negative edge are
/// unmatched. Prices are computed for every matched row unless `price_rows`
/// selects a subset. Completion needs `rng`; without it unmatched rows keep -1.
MatchingResult vcg_matching(const WeightMatrix& w, std::mt19937_64* rng = nullptr,
                            const std::vector<bool>* price_rows = nullptr);

struct IntMatchingResult {
  std::vector<int> match;
  std::vector<int> completion;
  std::vector<std::int64_t> prices;
  std::vector<char> has_price;
  std::int64_t weight = 0;
};

/// Integer fast path of vcg_matching; |w| * 4 (r + 1) must stay below 2^60.
IntMatchingResult vcg_matching_int(const std::vector<std::vector<std::int64_t>>& w, std::mt19937_64* rng = nullptr,
                                   const std::vector<bool>* price_rows = nullptr);

/// Exhaustive oracle for small r with the same canonical rule; no completion.
MatchingResult brute_force_matching(const WeightMatrix& w);

/// Largest total weight over partial matchings, by enumeration.
Rational brute_force_max_weight(const WeightMatrix& w);

}  // namespace mechlab

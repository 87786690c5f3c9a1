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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace mechlab {

/// A subset of the item ground set [n], bit i set iff item i is present.
using Subset = std::uint32_t;

inline constexpr std::size_t kMaxItems = 30;

inline constexpr Subset full_set(std::size_t n) {
  return n == 0 ? Subset{0} : static_cast<Subset>((std::uint64_t{1} << n) - 1);
}
inline constexpr bool contains(Subset s, std::size_t i) { return (s >> i) & 1U; }
inline constexpr Subset singleton(std::size_t i) { return Subset{1} << i; }
inline constexpr bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }
inline int cardinality(Subset s) { return std::popcount(s); }

inline std::vector<std::size_t> members(Subset s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s != 0; ++i, s >>= 1) {
    if (s & 1U) out.push_back(i);
  }
  return out;
}

/// Lexicographic order on the sorted member lists ({} < {0} < {0,1} < {1}).
inline bool lex_less(Subset a, Subset b) {
  const auto ma = members(a);
  const auto mb = members(b);
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

/// "{0,2}" style rendering, 0-based item indices.
inline std::string subset_to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : members(s)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

}  // namespace mechlab

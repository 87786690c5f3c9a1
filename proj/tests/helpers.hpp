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

#include <vector>

#include "mechlab/rational.hpp"
#include "mechlab/valuation.hpp"

namespace mechlab::testing {

inline Rational R(long a, long b = 1) { return ratio(a, b); }

inline PrivateInfoDist scalar_dist(std::vector<std::pair<Rational, Rational>> pts) {
  std::vector<SupportPoint> s;
  for (auto& [x, p] : pts) s.push_back({{x}, p});
  return PrivateInfoDist(std::move(s));
}

inline ValuationSpec iid(std::size_t n, ValuationClass cls, const PrivateInfoDist& d) {
  return ValuationSpec(n, std::move(cls), std::vector<PrivateInfoDist>(n, d));
}

/// Two items, values uniform on {1,2}.
inline ValuationSpec uniform12(ValuationClass cls = Additive{}) {
  return iid(2, std::move(cls), PrivateInfoDist::uniform({1, 2}));
}

inline TypeSpace table_space(std::size_t n, const std::vector<std::pair<Rational, std::vector<Rational>>>& rows) {
  std::vector<TypeEntry> e;
  for (const auto& [p, t] : rows) e.push_back({p, Valuation(n, t), {}});
  return TypeSpace(n, std::move(e));
}

}  // namespace mechlab::testing

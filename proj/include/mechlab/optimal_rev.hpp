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

#include <string>
#include <utility>
#include <vector>

#include "mechlab/caps.hpp"
#include "mechlab/lp.hpp"
#include "mechlab/rational.hpp"
#include "mechlab/subset.hpp"
#include "mechlab/valuation.hpp"

namespace mechlab {

/// A priced lottery over bundles. Weights may sum to less than one; the
/// remainder is the no-sale outcome.
struct Lottery {
  std::vector<std::pair<Subset, Rational>> weights;
  Rational price;

  Rational expected_value(const Valuation& v) const;
  Rational utility(const Valuation& v) const { return expected_value(v) - price; }
};

/// One lottery per type of the space it was built for (taxation principle).
using Menu = std::vector<Lottery>;

struct RevResult {
  Rational value;
  Menu menu;
  std::size_t lp_rows = 0;
  std::size_t lp_cols = 0;
  std::size_t distinct_types = 0;
  lp::Solution lp;
};

/// Optimal revenue of a single buyer over an explicit type space, via the
/// lottery-menu LP with allocation variables indexed by bundles.
RevResult exact_rev(const TypeSpace& ts, const Caps& caps = {}, const lp::Options& options = {});

/// Builds the LP without solving it (merged types, in merge order).
lp::LinearProgram build_menu_lp(const TypeSpace& ts);

struct MenuViolation {
  enum class Kind { kIr, kIc, kWeights };
  Kind kind;
  std::size_t type = 0;
  std::size_t other = 0;
  /// Negative: how far the constraint is violated.
  Rational slack;
};

struct MenuReport {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<MenuViolation> violations;
};

/// Checks all |ts|^2 IC and |ts| IR constraints exactly.
/// Throws ParameterError when the menu does not cover every type.
MenuReport verify_menu_ic(const TypeSpace& ts, const Menu& menu);

/// Expected payment when every type picks a utility-maximizing entry of the
/// menu (or nothing), ties broken toward the higher price.
Rational menu_revenue(const TypeSpace& ts, const Menu& menu);

/// Best deterministic menu: every type is assigned one bundle, prices are the
/// largest satisfying IC/IR (shortest paths). Exhaustive over assignments.
Rational best_deterministic_menu_revenue(const TypeSpace& ts, std::size_t max_assignments = 1u << 20);

}  // namespace mechlab

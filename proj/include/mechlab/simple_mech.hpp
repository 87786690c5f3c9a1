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

#include "mechlab/caps.hpp"
#include "mechlab/one_dim.hpp"
#include "mechlab/rational.hpp"
#include "mechlab/valuation.hpp"

namespace mechlab {

struct PostedPrice {
  Rational price;
  Rational revenue;
};

/// Best posted price for a single buyer; ties go to the lowest price.
PostedPrice myerson_one_dim(const OneDimDist& d);

Rational brev(const ValuationSpec& spec, const Caps& caps = {});
Rational brev(const TypeSpace& ts);

struct QuantilePrice {
  Rational price;
  Rational sale_prob;
  /// Fraction of the atom at `price` that buys.
  Rational atom_fraction;
};

struct QuantileRevenue {
  Rational revenue;
  QuantilePrice quote;
};

/// Best reserve revenue selling with probability at most q.
QuantileRevenue rev_q(const OneDimDist& d, const Rational& q);

Rational srev_star(const ValuationSpec& spec, const std::vector<Rational>& q);
Rational srev_star(const TypeSpace& ts, const std::vector<Rational>& q);

struct ItemPricing {
  Rational revenue;
  std::vector<Rational> prices;
  std::size_t vectors_searched = 0;
};

/// Per-item candidate prices: every marginal value v(S) - v(S \ {i}) plus 0.
std::vector<std::vector<Rational>> critical_grid(const TypeSpace& ts);

/// Expected revenue of item prices under seller-favorable demand.
Rational pricing_revenue(const TypeSpace& ts, const std::vector<Rational>& prices, const Caps& caps = {});

ItemPricing srev_exact(const TypeSpace& ts, const Caps& caps = {});
ItemPricing srev_exact(const ValuationSpec& spec, const Caps& caps = {});
/// Grid search over caller-supplied per-item candidates.
ItemPricing srev_search(const TypeSpace& ts, const std::vector<std::vector<Rational>>& grid, const Caps& caps = {});

struct InducedPricing {
  std::vector<QuantilePrice> quotes;
  Rational revenue;
  Rational srev_star;
};

/// Prices each item at its rev_q reserve; items whose singleton value hits the
/// reserve exactly buy with an independent coin of bias atom_fraction. Throws
/// InvariantViolation if the exact revenue falls below srev_star.
InducedPricing induced_pricing(const ValuationSpec& spec, const std::vector<Rational>& q, const Caps& caps = {});

}  // namespace mechlab

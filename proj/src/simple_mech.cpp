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

#include "mechlab/simple_mech.hpp"

#include <algorithm>
#include <set>

#include "mechlab/errors.hpp"

namespace mechlab {

PostedPrice myerson_one_dim(const OneDimDist& d) {
  if (d.empty()) throw ParameterError("empty distribution");
  PostedPrice best{d.min_value(), -1};
  Rational above = 1;
  for (const auto& a : d.atoms()) {
    Rational rev = a.value * above;
    if (rev > best.revenue) best = {a.value, rev};
    above -= a.prob;
  }
  return best;
}

Rational brev(const ValuationSpec& spec, const Caps& caps) {
  if (spec.n() == 0) return 0;
  return myerson_one_dim(grand_bundle_dist(spec, caps)).revenue;
}

Rational brev(const TypeSpace& ts) {
  if (ts.n() == 0) return 0;
  return myerson_one_dim(ts.value_dist(full_set(ts.n()))).revenue;
}

QuantileRevenue rev_q(const OneDimDist& d, const Rational& q) {
  if (q < 0 || q > 1) throw ParameterError("quantile must lie in [0,1]");
  if (d.empty()) throw ParameterError("empty distribution");
  if (q == 0) return {0, {d.max_value() + 1, 0, 0}};
  std::vector<Rational> candidates{q};
  for (const auto& a : d.atoms()) {
    Rational ge = d.prob_ge(a.value);
    if (ge <= q) candidates.push_back(ge);
  }
  QuantileRevenue best{-1, {}};
  for (const auto& qq : candidates) {
    // Largest support value still sold with probability >= qq.
    Rational price = d.min_value();
    for (const auto& a : d.atoms()) {
      if (d.prob_ge(a.value) >= qq) price = a.value;
    }
    Rational rev = qq * price;
    if (rev > best.revenue || (rev == best.revenue && price < best.quote.price)) {
      Rational frac = (qq - d.prob_gt(price)) / d.prob_eq(price);
      best = {rev, {price, qq, frac}};
    }
  }
  return best;
}

namespace {

void check_q(const std::vector<Rational>& q, std::size_t n) {
  if (q.size() != n) throw ParameterError("quantile vector has wrong length");
  for (const auto& x : q) {
    if (x < 0 || x > 1) throw ParameterError("quantiles must lie in [0,1]");
  }
}

template <typename DistFn>
Rational srev_star_impl(std::size_t n, const std::vector<Rational>& q, DistFn&& dist) {
  check_q(q, n);
  Rational keep = 1;
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    keep *= 1 - q[i];
    total += rev_q(dist(i), q[i]).revenue;
  }
  return keep * total;
}

}  // namespace

Rational srev_star(const ValuationSpec& spec, const std::vector<Rational>& q) {
  return srev_star_impl(spec.n(), q, [&](std::size_t i) { return single_item_dist(spec, i); });
}

Rational srev_star(const TypeSpace& ts, const std::vector<Rational>& q) {
  return srev_star_impl(ts.n(), q, [&](std::size_t i) { return single_item_dist(ts, i); });
}

std::vector<std::vector<Rational>> critical_grid(const TypeSpace& ts) {
  const std::size_t n = ts.n();
  const Subset cells = static_cast<Subset>(std::size_t{1} << n);
  std::vector<std::set<Rational>> grid(n);
  for (auto& g : grid) g.insert(Rational(0));
  for (const auto& e : ts.entries()) {
    for (Subset s = 1; s < cells; ++s) {
      for (std::size_t i : members(s)) grid[i].insert(e.valuation(s) - e.valuation(s & ~singleton(i)));
    }
  }
  std::vector<std::vector<Rational>> out;
  for (auto& g : grid) out.emplace_back(g.begin(), g.end());
  return out;
}

Rational pricing_revenue(const TypeSpace& ts, const std::vector<Rational>& prices, const Caps& caps) {
  Rational total = 0;
  for (const auto& e : ts.entries()) total += e.prob * demand_set(e.valuation, prices, caps).payment;
  return total;
}

ItemPricing srev_search(const TypeSpace& ts, const std::vector<std::vector<Rational>>& grid, const Caps& caps) {
  const std::size_t n = ts.n();
  if (grid.size() != n) throw ParameterError("price grid has wrong length");
  if (n == 0) return {0, {}, 1};
  if (n > caps.demand_items) throw ResourceError("demand enumeration", n, caps.demand_items);
  std::size_t count = 1;
  for (const auto& g : grid) {
    if (g.empty()) throw ParameterError("empty price grid");
    if (count > caps.price_grid / g.size() + 1) throw ResourceError("price grid", caps.price_grid + 1, caps.price_grid);
    count *= g.size();
  }
  if (count > caps.price_grid) throw ResourceError("price grid", count, caps.price_grid);

  std::vector<std::size_t> idx(n, 0);
  std::vector<Rational> prices(n);
  ItemPricing best{-1, {}, count};
  while (true) {
    for (std::size_t i = 0; i < n; ++i) prices[i] = grid[i][idx[i]];
    Rational rev = pricing_revenue(ts, prices, caps);
    if (rev > best.revenue) {
      best.revenue = rev;
      best.prices = prices;
    }
    std::size_t i = 0;
    while (i < n && ++idx[i] == grid[i].size()) idx[i++] = 0;
    if (i == n) break;
  }
  return best;
}

ItemPricing srev_exact(const TypeSpace& ts, const Caps& caps) { return srev_search(ts, critical_grid(ts), caps); }

ItemPricing srev_exact(const ValuationSpec& spec, const Caps& caps) {
  return srev_exact(enumerate_type_space(spec, caps), caps);
}

InducedPricing induced_pricing(const ValuationSpec& spec, const std::vector<Rational>& q, const Caps& caps) {
  const std::size_t n = spec.n();
  check_q(q, n);
  if (n > caps.demand_items) throw ResourceError("demand enumeration", n, caps.demand_items);
  InducedPricing out;
  std::vector<Rational> prices(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.quotes.push_back(rev_q(single_item_dist(spec, i), q[i]).quote);
    prices[i] = out.quotes.back().price;
  }
  out.srev_star = srev_star(spec, q);

  const TypeSpace ts = enumerate_type_space(spec, caps);
  const Subset cells = static_cast<Subset>(std::size_t{1} << n);
  std::vector<Rational> payment(cells);
  for (Subset s = 1; s < cells; ++s) payment[s] = payment[s & (s - 1)] + prices[std::countr_zero(s)];

  out.revenue = 0;
  for (const auto& e : ts.entries()) {
    // Items whose singleton value sits exactly on the reserve; only those with a
    // fractional coin need enumerating, the rest are resolved deterministically.
    Subset heads_always = 0;
    std::vector<std::size_t> coins;
    for (std::size_t i = 0; i < n; ++i) {
      if (e.valuation(singleton(i)) != prices[i]) continue;
      const Rational& f = out.quotes[i].atom_fraction;
      if (f == 1) {
        heads_always |= singleton(i);
      } else if (f > 0) {
        coins.push_back(i);
      }
    }
    Subset tie_items = heads_always;
    for (std::size_t i = 0; i < n; ++i) {
      if (e.valuation(singleton(i)) == prices[i]) tie_items |= singleton(i);
    }
    const std::size_t outcomes = std::size_t{1} << coins.size();
    for (std::size_t mask = 0; mask < outcomes; ++mask) {
      Subset heads = heads_always;
      Rational prob = e.prob;
      for (std::size_t c = 0; c < coins.size(); ++c) {
        const Rational& f = out.quotes[coins[c]].atom_fraction;
        if ((mask >> c) & 1U) {
          heads |= singleton(coins[c]);
          prob *= f;
        } else {
          prob *= 1 - f;
        }
      }
      // Utility, then an infinitesimal +-1 per tie item, then payment, then lex.
      Subset best = 0;
      Rational best_u = 0;
      int best_eta = 0;
      for (Subset s = 1; s < cells; ++s) {
        Rational u = e.valuation(s) - payment[s];
        const int eta = std::popcount(s & tie_items & heads) - std::popcount(s & tie_items & ~heads);
        bool better = u > best_u;
        if (!better && u == best_u) {
          if (eta != best_eta) {
            better = eta > best_eta;
          } else if (payment[s] != payment[best]) {
            better = payment[s] > payment[best];
          } else {
            better = lex_less(s, best);
          }
        }
        if (better) {
          best = s;
          best_u = std::move(u);
          best_eta = eta;
        }
      }
      out.revenue += prob * payment[best];
    }
  }
  if (out.revenue < out.srev_star) {
    throw InvariantViolation("induced pricing revenue " + to_string(out.revenue) + " below srev_star " +
                             to_string(out.srev_star));
  }
  return out;
}

}  // namespace mechlab

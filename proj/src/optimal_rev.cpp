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

#include "mechlab/optimal_rev.hpp"

#include <optional>

#include "mechlab/errors.hpp"

namespace mechlab {

Rational Lottery::expected_value(const Valuation& v) const {
  Rational total = 0;
  for (const auto& [s, w] : weights) total += w * v(s);
  return total;
}

lp::LinearProgram build_menu_lp(const TypeSpace& ts) {
  const std::size_t types = ts.size();
  const std::size_t cells = std::size_t{1} << ts.n();
  // Per type: one variable per nonempty bundle, then the price.
  lp::LinearProgram lp;
  for (std::size_t k = 0; k < types; ++k) {
    for (Subset s = 1; s < cells; ++s) lp.add_var(Rational(0));
    lp.add_var(ts[k].prob);
  }
  auto alloc = [&](std::size_t k, Subset s) { return k * cells + (s - 1); };
  auto price = [&](std::size_t k) { return k * cells + (cells - 1); };

  for (std::size_t k = 0; k < types; ++k) {
    lp::LinearProgram::Row row;
    for (Subset s = 1; s < cells; ++s) row.terms.emplace_back(alloc(k, s), Rational(1));
    row.rhs = 1;
    lp.rows.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < types; ++k) {
    const auto& v = ts[k].valuation;
    lp::LinearProgram::Row ir;
    ir.terms.emplace_back(price(k), Rational(1));
    for (Subset s = 1; s < cells; ++s) {
      if (sgn(v(s)) != 0) ir.terms.emplace_back(alloc(k, s), -v(s));
    }
    ir.rhs = 0;
    lp.rows.push_back(std::move(ir));
  }
  // Type k must not prefer type j's lottery.
  for (std::size_t k = 0; k < types; ++k) {
    const auto& v = ts[k].valuation;
    for (std::size_t j = 0; j < types; ++j) {
      if (j == k) continue;
      lp::LinearProgram::Row ic;
      for (Subset s = 1; s < cells; ++s) {
        if (sgn(v(s)) == 0) continue;
        ic.terms.emplace_back(alloc(j, s), v(s));
        ic.terms.emplace_back(alloc(k, s), -v(s));
      }
      ic.terms.emplace_back(price(j), Rational(-1));
      ic.terms.emplace_back(price(k), Rational(1));
      ic.rhs = 0;
      lp.rows.push_back(std::move(ic));
    }
  }
  return lp;
}

RevResult exact_rev(const TypeSpace& ts, const Caps& caps, const lp::Options& options) {
  auto [merged, index] = merge_identical(ts);
  const std::size_t types = merged.size();
  const std::size_t cells = std::size_t{1} << merged.n();
  const std::size_t rows = types * (types + 1);
  const std::size_t cols = types * cells;
  if (rows * cols > caps.lp_cells) throw ResourceError("menu LP", rows * cols, caps.lp_cells);

  RevResult result;
  result.lp_rows = rows;
  result.lp_cols = cols;
  result.distinct_types = types;
  if (merged.n() == 0) {
    result.value = 0;
    result.menu.assign(ts.size(), Lottery{{}, Rational(0)});
    return result;
  }
  const auto lp = build_menu_lp(merged);
  result.lp = lp::solve(lp, options);
  result.value = result.lp.value;

  std::vector<Lottery> lotteries(types);
  for (std::size_t k = 0; k < types; ++k) {
    for (Subset s = 1; s < cells; ++s) {
      const Rational& w = result.lp.x[k * cells + (s - 1)];
      if (sgn(w) != 0) lotteries[k].weights.emplace_back(s, w);
    }
    lotteries[k].price = result.lp.x[k * cells + (cells - 1)];
  }
  result.menu.reserve(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) result.menu.push_back(lotteries[index[k]]);
  return result;
}

MenuReport verify_menu_ic(const TypeSpace& ts, const Menu& menu) {
  if (menu.size() != ts.size()) {
    throw ParameterError("menu has " + std::to_string(menu.size()) + " entries for " + std::to_string(ts.size()) +
                         " types");
  }
  MenuReport report;
  for (std::size_t k = 0; k < menu.size(); ++k) {
    Rational total = 0;
    bool bad = sgn(menu[k].price) < 0;
    for (const auto& [s, w] : menu[k].weights) {
      if (sgn(w) < 0 || !is_subset(s, full_set(ts.n()))) bad = true;
      total += w;
    }
    if (bad || total > 1) {
      report.violations.push_back({MenuViolation::Kind::kWeights, k, k, Rational(1) - total});
    }
  }
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto& v = ts[k].valuation;
    const Rational own = menu[k].utility(v);
    ++report.checked;
    if (sgn(own) < 0) report.violations.push_back({MenuViolation::Kind::kIr, k, k, own});
    for (std::size_t j = 0; j < ts.size(); ++j) {
      if (j == k) continue;
      ++report.checked;
      Rational slack = own - menu[j].utility(v);
      if (sgn(slack) < 0) report.violations.push_back({MenuViolation::Kind::kIc, k, j, std::move(slack)});
    }
  }
  report.pass = report.violations.empty();
  return report;
}

Rational menu_revenue(const TypeSpace& ts, const Menu& menu) {
  Rational revenue = 0;
  for (const auto& entry : ts.entries()) {
    Rational best_u = 0;
    Rational best_price = 0;
    for (const auto& lottery : menu) {
      Rational u = lottery.utility(entry.valuation);
      if (u > best_u || (u == best_u && lottery.price > best_price)) {
        best_u = std::move(u);
        best_price = lottery.price;
      }
    }
    revenue += entry.prob * best_price;
  }
  return revenue;
}

Rational best_deterministic_menu_revenue(const TypeSpace& ts, std::size_t max_assignments) {
  const std::size_t types = ts.size();
  const std::size_t cells = std::size_t{1} << ts.n();
  std::size_t assignments = 1;
  for (std::size_t k = 0; k < types; ++k) {
    if (assignments > max_assignments / cells) {
      throw ResourceError("deterministic menu search", assignments * cells, max_assignments);
    }
    assignments *= cells;
  }
  std::vector<Subset> bundle(types, 0);
  Rational best = 0;
  // Node `types` is the outside option with price 0.
  std::vector<std::optional<Rational>> dist(types + 1);
  while (true) {
    // Largest prices with p_k <= p_j + v_k(S_k) - v_k(S_j) and p_k <= v_k(S_k):
    // shortest-path distances from the outside option.
    for (auto& d : dist) d.reset();
    dist[types] = Rational(0);
    bool negative_cycle = false;
    for (std::size_t round = 0; round <= types + 1; ++round) {
      bool changed = false;
      for (std::size_t k = 0; k < types; ++k) {
        const auto& v = ts[k].valuation;
        for (std::size_t j = 0; j <= types; ++j) {
          if (j == k || !dist[j]) continue;
          const Rational edge = j == types ? v(bundle[k]) : v(bundle[k]) - v(bundle[j]);
          Rational cand = *dist[j] + edge;
          if (!dist[k] || cand < *dist[k]) {
            dist[k] = std::move(cand);
            changed = true;
          }
        }
      }
      if (!changed) break;
      if (round == types + 1) negative_cycle = true;
    }
    if (!negative_cycle) {
      Rational revenue = 0;
      bool feasible = true;
      for (std::size_t k = 0; k < types; ++k) {
        if (!dist[k] || sgn(*dist[k]) < 0) {
          feasible = false;
          break;
        }
        revenue += ts[k].prob * *dist[k];
      }
      if (feasible && revenue > best) best = revenue;
    }
    std::size_t k = 0;
    while (k < types && ++bundle[k] == cells) bundle[k++] = 0;
    if (k == types) break;
  }
  return best;
}

}  // namespace mechlab

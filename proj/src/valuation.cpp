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

#include "mechlab/valuation.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "mechlab/errors.hpp"

namespace mechlab {

std::string class_name(const ValuationClass& cls) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Additive>) return "additive";
        if constexpr (std::is_same_v<T, KDemand>) return "kdemand";
        if constexpr (std::is_same_v<T, DownwardClosed>) return "downward_closed";
        if constexpr (std::is_same_v<T, Xos>) return "xos";
      },
      cls);
}

// PrivateInfoDist

PrivateInfoDist::PrivateInfoDist(std::vector<SupportPoint> support) : support_(std::move(support)) {
  if (support_.empty()) throw ParameterError("private-info distribution has empty support");
  const std::size_t arity = support_.front().info.size();
  if (arity == 0) throw ParameterError("private-info vector has arity 0");
  Rational total = 0;
  for (std::size_t a = 0; a < support_.size(); ++a) {
    const auto& pt = support_[a];
    if (pt.info.size() != arity) throw ParameterError("private-info vectors of differing arity");
    if (pt.prob <= 0) throw ParameterError("support probability must be positive");
    for (const auto& x : pt.info) {
      if (x < 0) throw ParameterError("private-info values must be nonnegative");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (support_[b].info == pt.info) throw ParameterError("duplicate support entry");
    }
    total += pt.prob;
  }
  if (total != 1) throw ParameterError("support probabilities sum to " + to_string(total) + ", not 1");
}

PrivateInfoDist PrivateInfoDist::point_mass(Info info) {
  return PrivateInfoDist({SupportPoint{std::move(info), Rational(1)}});
}

PrivateInfoDist PrivateInfoDist::uniform(const std::vector<Rational>& values) {
  std::vector<SupportPoint> pts;
  const Rational p(1, static_cast<unsigned long>(values.size()));
  for (const auto& v : values) pts.push_back({Info{v}, p});
  return PrivateInfoDist(std::move(pts));
}

// ValuationSpec

ValuationSpec::ValuationSpec(std::size_t n, ValuationClass cls, std::vector<PrivateInfoDist> items)
    : n_(n), class_(std::move(cls)), items_(std::move(items)) {
  if (n_ > kMaxItems) throw ParameterError("at most 30 items are supported");
  if (items_.size() != n_) {
    throw ParameterError("expected " + std::to_string(n_) + " item distributions, got " +
                         std::to_string(items_.size()));
  }
  const std::size_t arity = info_arity();
  for (const auto& item : items_) {
    if (item.arity() != arity) {
      throw ParameterError("item info arity " + std::to_string(item.arity()) + " does not match class arity " +
                           std::to_string(arity));
    }
  }
  if (const auto* kd = std::get_if<KDemand>(&class_)) {
    if (kd->k == 0) throw ParameterError("k-demand requires k >= 1");
    if (kd->k > n_ && n_ > 0) throw ParameterError("k-demand requires k <= n");
  }
  if (const auto* xos = std::get_if<Xos>(&class_)) {
    if (xos->clauses == 0) throw ParameterError("XOS requires at least one clause");
  }
  if (const auto* dc = std::get_if<DownwardClosed>(&class_)) {
    feasible_mask_.assign(std::size_t{1} << n_, false);
    for (Subset s : dc->feasible) {
      if (!is_subset(s, full_set(n_))) throw ParameterError("feasible set outside the ground set");
      feasible_mask_[s] = true;
    }
    if (!feasible_mask_[0]) throw ParameterError("downward-closed family must contain the empty set");
    for (std::size_t i = 0; i < n_; ++i) {
      if (!feasible_mask_[singleton(i)]) throw ParameterError("downward-closed family must contain every singleton");
    }
    for (Subset s = 0; s <= full_set(n_) && s < feasible_mask_.size(); ++s) {
      if (!feasible_mask_[s]) continue;
      for (std::size_t i : members(s)) {
        if (!feasible_mask_[s & ~singleton(i)]) {
          throw ParameterError("family is not downward closed at " + subset_to_string(s));
        }
      }
    }
  }
}

const PrivateInfoDist& ValuationSpec::item(std::size_t i) const {
  if (i >= n_) throw ParameterError("item index " + std::to_string(i) + " out of range");
  return items_[i];
}

std::size_t ValuationSpec::info_arity() const noexcept {
  if (const auto* xos = std::get_if<Xos>(&class_)) return xos->clauses;
  return 1;
}

std::size_t ValuationSpec::support_profiles() const noexcept {
  std::size_t count = 1;
  for (const auto& item : items_) count *= item.size();
  return count;
}

bool ValuationSpec::feasible(Subset s) const noexcept {
  if (feasible_mask_.empty()) return true;
  return s < feasible_mask_.size() && feasible_mask_[s];
}

// Evaluation

Rational singleton_value(const ValuationSpec& spec, const Info& info) {
  if (std::holds_alternative<Xos>(spec.valuation_class())) {
    return *std::max_element(info.begin(), info.end());
  }
  return info.front();
}

Rational evaluate(const ValuationSpec& spec, std::span<const Info> info, Subset s) {
  if (info.size() != spec.n()) throw ParameterError("info profile has wrong length");
  if (!is_subset(s, full_set(spec.n()))) throw ParameterError("subset outside the ground set");
  const std::size_t arity = spec.info_arity();
  for (std::size_t i : members(s)) {
    if (info[i].size() != arity) throw ParameterError("info vector of wrong arity for item " + std::to_string(i));
  }
  return std::visit(
      [&](const auto& cls) -> Rational {
        using T = std::decay_t<decltype(cls)>;
        if constexpr (std::is_same_v<T, Additive>) {
          Rational total = 0;
          for (std::size_t i : members(s)) total += info[i][0];
          return total;
        } else if constexpr (std::is_same_v<T, KDemand>) {
          std::vector<Rational> vals;
          for (std::size_t i : members(s)) vals.push_back(info[i][0]);
          const std::size_t take = std::min(cls.k, vals.size());
          std::partial_sort(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(take), vals.end(),
                            std::greater<>());
          Rational total = 0;
          for (std::size_t j = 0; j < take; ++j) total += vals[j];
          return total;
        } else if constexpr (std::is_same_v<T, DownwardClosed>) {
          Rational best = 0;
          // Enumerate subsets T of S; feasible sets are closed under subsets.
          for (Subset t = s;; t = (t - 1) & s) {
            if (spec.feasible(t)) {
              Rational total = 0;
              for (std::size_t i : members(t)) total += info[i][0];
              if (total > best) best = total;
            }
            if (t == 0) break;
          }
          return best;
        } else {
          Rational best = 0;
          for (std::size_t j = 0; j < cls.clauses; ++j) {
            Rational total = 0;
            for (std::size_t i : members(s)) total += info[i][j];
            if (total > best) best = total;
          }
          return best;
        }
      },
      spec.valuation_class());
}

Valuation::Valuation(std::size_t n, std::vector<Rational> table) : n_(n), table_(std::move(table)) {
  if (n_ > kMaxItems) throw ParameterError("at most 30 items are supported");
  if (table_.size() != (std::size_t{1} << n_)) throw ParameterError("valuation table must have 2^n entries");
}

Valuation materialize(const ValuationSpec& spec, std::span<const Info> info) {
  const std::size_t cells = std::size_t{1} << spec.n();
  std::vector<Rational> table(cells);
  for (Subset s = 0; s < cells; ++s) table[s] = evaluate(spec, info, s);
  return Valuation(spec.n(), std::move(table));
}

// TypeSpace

TypeSpace::TypeSpace(std::size_t n, std::vector<TypeEntry> entries) : n_(n), entries_(std::move(entries)) {
  if (entries_.empty()) throw ParameterError("type space must be nonempty");
  Rational total = 0;
  for (const auto& e : entries_) {
    if (e.prob <= 0) throw ParameterError("type probabilities must be positive");
    if (e.valuation.n() != n_) throw ParameterError("type table over the wrong ground set");
    if (e.valuation(0) != 0) throw ParameterError("v(empty) must be 0");
    if (!e.info.empty() && e.info.size() != n_) throw ParameterError("type info has wrong length");
    total += e.prob;
  }
  if (total != 1) throw ParameterError("type probabilities sum to " + to_string(total) + ", not 1");
}

Rational TypeSpace::expected_value(Subset s) const {
  Rational total = 0;
  for (const auto& e : entries_) total += e.prob * e.valuation(s);
  return total;
}

OneDimDist TypeSpace::value_dist(Subset s) const {
  std::vector<std::pair<Rational, Rational>> atoms;
  atoms.reserve(entries_.size());
  for (const auto& e : entries_) atoms.emplace_back(e.valuation(s), e.prob);
  return OneDimDist(std::move(atoms));
}

OneDimDist single_item_dist(const ValuationSpec& spec, std::size_t i) {
  const auto& item = spec.item(i);
  std::vector<std::pair<Rational, Rational>> atoms;
  for (const auto& pt : item.support()) atoms.emplace_back(singleton_value(spec, pt.info), pt.prob);
  return OneDimDist(std::move(atoms));
}

OneDimDist single_item_dist(const TypeSpace& ts, std::size_t i) {
  if (i >= ts.n()) throw ParameterError("item index " + std::to_string(i) + " out of range");
  return ts.value_dist(singleton(i));
}

OneDimDist grand_bundle_dist(const ValuationSpec& spec, const Caps& caps) {
  const std::size_t profiles = spec.support_profiles();
  if (profiles > caps.type_space_cells) {
    throw ResourceError("grand-bundle distribution enumeration", profiles, caps.type_space_cells);
  }
  std::vector<std::pair<Rational, Rational>> atoms;
  atoms.reserve(profiles);
  const Subset all = full_set(spec.n());
  for_each_profile(spec, [&](const std::vector<Info>& info, const Rational& prob) {
    atoms.emplace_back(evaluate(spec, info, all), prob);
  });
  return OneDimDist(std::move(atoms));
}

// Demand

DemandChoice demand_set(const Valuation& v, std::span<const Rational> prices, const Caps& caps) {
  const std::size_t n = v.n();
  if (n > caps.demand_items) throw ResourceError("demand enumeration", n, caps.demand_items);
  if (prices.size() != n) throw ParameterError("price vector has wrong length");
  for (const auto& p : prices) {
    if (p < 0) throw ParameterError("prices must be nonnegative");
  }
  const std::size_t cells = std::size_t{1} << n;
  std::vector<Rational> payment(cells);
  for (Subset s = 1; s < cells; ++s) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(s));
    payment[s] = payment[s & (s - 1)] + prices[low];
  }
  DemandChoice best{0, 0, 0};
  for (Subset s = 1; s < cells; ++s) {
    Rational u = v(s) - payment[s];
    bool better = false;
    if (u > best.utility) {
      better = true;
    } else if (u == best.utility) {
      if (payment[s] > best.payment) {
        better = true;
      } else if (payment[s] == best.payment && lex_less(s, best.bundle)) {
        better = true;
      }
    }
    if (better) best = {s, payment[s], std::move(u)};
  }
  return best;
}

// Axioms

std::string to_string(AxiomViolation::Kind kind) {
  switch (kind) {
    case AxiomViolation::Kind::kEmptySetNonzero: return "empty_set_nonzero";
    case AxiomViolation::Kind::kNotMonotone: return "not_monotone";
    case AxiomViolation::Kind::kNotSubadditive: return "not_subadditive";
    case AxiomViolation::Kind::kExternality: return "externality";
    case AxiomViolation::Kind::kNegativeValue: return "negative_value";
  }
  return "unknown";
}

namespace {

std::optional<AxiomViolation> check_table(const Valuation& v, std::size_t index) {
  const std::size_t cells = std::size_t{1} << v.n();
  if (v(0) != 0) return AxiomViolation{AxiomViolation::Kind::kEmptySetNonzero, index, 0, 0, "v({}) != 0"};
  for (Subset s = 0; s < cells; ++s) {
    if (v(s) < 0) {
      return AxiomViolation{AxiomViolation::Kind::kNegativeValue, index, s, 0, "v(S) < 0"};
    }
    for (std::size_t i = 0; i < v.n(); ++i) {
      if (contains(s, i)) continue;
      if (v(s | singleton(i)) < v(s)) {
        return AxiomViolation{AxiomViolation::Kind::kNotMonotone, index, s, singleton(i),
                              "v(S u {i}) < v(S)"};
      }
    }
  }
  for (Subset s = 1; s < cells; ++s) {
    for (Subset t = s; t < cells; ++t) {
      if (v(s | t) > v(s) + v(t)) {
        return AxiomViolation{AxiomViolation::Kind::kNotSubadditive, index, s, t, "v(S u T) > v(S) + v(T)"};
      }
    }
  }
  return std::nullopt;
}

std::optional<AxiomViolation> check_externalities(const TypeSpace& ts) {
  const std::size_t n = ts.n();
  const std::size_t cells = std::size_t{1} << n;
  for (Subset s = 0; s < cells; ++s) {
    std::map<std::vector<Info>, std::pair<Rational, std::size_t>> seen;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      std::vector<Info> key;
      for (std::size_t i : members(s)) key.push_back(ts[k].info[i]);
      const Rational& value = ts[k].valuation(s);
      auto [it, inserted] = seen.try_emplace(std::move(key), value, k);
      if (!inserted && it->second.first != value) {
        return AxiomViolation{AxiomViolation::Kind::kExternality, k, s, 0,
                              "v(S) differs between types " + std::to_string(it->second.second) + " and " +
                                  std::to_string(k) + " that agree on S"};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

AxiomReport check_axioms(const TypeSpace& ts) {
  AxiomReport report;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    ++report.valuations_checked;
    if (auto v = check_table(ts[k].valuation, k)) {
      report.pass = false;
      report.violation = std::move(v);
      return report;
    }
  }
  const bool has_info =
      std::all_of(ts.entries().begin(), ts.entries().end(), [](const TypeEntry& e) { return !e.info.empty(); });
  if (has_info) {
    if (auto v = check_externalities(ts)) {
      report.pass = false;
      report.violation = std::move(v);
    }
  }
  return report;
}

AxiomReport check_axioms(const ValuationSpec& spec, const Caps& caps) {
  const std::size_t cells = std::size_t{1} << spec.n();
  const std::size_t work = spec.support_profiles() * cells * cells;
  if (work > caps.exhaustive_checks) throw ResourceError("axiom check", work, caps.exhaustive_checks);
  Caps unlimited = caps;
  unlimited.type_space_cells = spec.support_profiles() * cells;
  return check_axioms(enumerate_type_space(spec, unlimited));
}

// Restriction

ValuationSpec restrict(const ValuationSpec& spec, Subset a) {
  if (!is_subset(a, full_set(spec.n()))) throw ParameterError("restriction set outside the ground set");
  const auto kept = members(a);
  std::vector<PrivateInfoDist> items;
  for (std::size_t i : kept) items.push_back(spec.item(i));
  const std::size_t m = kept.size();
  auto reindex = [&](Subset s) {
    Subset out = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (contains(s, kept[j])) out |= singleton(j);
    }
    return out;
  };
  ValuationClass cls = std::visit(
      [&](const auto& c) -> ValuationClass {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, KDemand>) {
          if (m == 0) return Additive{};
          return KDemand{std::min(c.k, m)};
        } else if constexpr (std::is_same_v<T, DownwardClosed>) {
          DownwardClosed out;
          for (Subset s : c.feasible) {
            if (is_subset(s, a)) out.feasible.push_back(reindex(s));
          }
          return out;
        } else {
          return c;
        }
      },
      spec.valuation_class());
  return ValuationSpec(m, std::move(cls), std::move(items));
}

TypeSpace restrict(const TypeSpace& ts, Subset a) {
  if (!is_subset(a, full_set(ts.n()))) throw ParameterError("restriction set outside the ground set");
  const auto kept = members(a);
  const std::size_t m = kept.size();
  const std::size_t cells = std::size_t{1} << m;
  std::vector<TypeEntry> entries;
  entries.reserve(ts.size());
  for (const auto& e : ts.entries()) {
    std::vector<Rational> table(cells);
    for (Subset s = 0; s < cells; ++s) {
      Subset orig = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if (contains(s, j)) orig |= singleton(kept[j]);
      }
      table[s] = e.valuation(orig);
    }
    std::vector<Info> info;
    if (!e.info.empty()) {
      for (std::size_t i : kept) info.push_back(e.info[i]);
    }
    entries.push_back({e.prob, Valuation(m, std::move(table)), std::move(info)});
  }
  return TypeSpace(m, std::move(entries));
}

TypeSpace enumerate_type_space(const ValuationSpec& spec, const Caps& caps) {
  const std::size_t profiles = spec.support_profiles();
  const std::size_t cells = profiles * (std::size_t{1} << spec.n());
  if (cells > caps.type_space_cells) throw ResourceError("type-space enumeration", cells, caps.type_space_cells);
  std::vector<TypeEntry> entries;
  entries.reserve(profiles);
  for_each_profile(spec, [&](const std::vector<Info>& info, const Rational& prob) {
    entries.push_back({prob, materialize(spec, info), info});
  });
  return TypeSpace(spec.n(), std::move(entries));
}

std::pair<TypeSpace, std::vector<std::size_t>> merge_identical(const TypeSpace& ts) {
  std::map<std::vector<Rational>, std::size_t, decltype([](const std::vector<Rational>& a,
                                                          const std::vector<Rational>& b) {
             return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
           })>
      index;
  std::vector<TypeEntry> merged;
  std::vector<std::size_t> map(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto& e = ts[k];
    auto [it, inserted] = index.try_emplace(e.valuation.table(), merged.size());
    if (inserted) {
      merged.push_back({e.prob, e.valuation, {}});
    } else {
      merged[it->second].prob += e.prob;
    }
    map[k] = it->second;
  }
  return {TypeSpace(ts.n(), std::move(merged)), std::move(map)};
}

}  // namespace mechlab

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

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mechlab/caps.hpp"
#include "mechlab/one_dim.hpp"
#include "mechlab/rational.hpp"
#include "mechlab/subset.hpp"

namespace mechlab {

// Valuation classes. Each is monotone, subadditive and has no externalities
// whenever its private information is nonnegative.

struct Additive {};

/// v(S) = sum of the k largest x_i, i in S.
struct KDemand {
  std::size_t k = 1;
};

/// v(S) = max over feasible T subset of S of sum_{i in T} x_i.
struct DownwardClosed {
  std::vector<Subset> feasible;
};

/// v(S) = max over clauses j of sum_{i in S} x_i[j].
struct Xos {
  std::size_t clauses = 1;
};

using ValuationClass = std::variant<Additive, KDemand, DownwardClosed, Xos>;

std::string class_name(const ValuationClass& cls);

/// Private information of one item: a scalar value, or a clause vector for XOS.
using Info = std::vector<Rational>;

struct SupportPoint {
  Info info;
  Rational prob;
};

/// Finite distribution of one item's private information.
class PrivateInfoDist {
 public:
  PrivateInfoDist() = default;
  /// Throws ParameterError unless probabilities are positive and sum to one,
  /// entries are distinct and share one arity, and every value is nonnegative.
  explicit PrivateInfoDist(std::vector<SupportPoint> support);

  static PrivateInfoDist point_mass(Info info);
  /// Uniform distribution over scalar values.
  static PrivateInfoDist uniform(const std::vector<Rational>& values);

  const std::vector<SupportPoint>& support() const noexcept { return support_; }
  std::size_t size() const noexcept { return support_.size(); }
  std::size_t arity() const noexcept { return support_.empty() ? 0 : support_.front().info.size(); }

 private:
  std::vector<SupportPoint> support_;
};

/// Distribution over valuations that is subadditive over independent items.
class ValuationSpec {
 public:
  ValuationSpec() = default;
  ValuationSpec(std::size_t n, ValuationClass cls, std::vector<PrivateInfoDist> items);

  std::size_t n() const noexcept { return n_; }
  const ValuationClass& valuation_class() const noexcept { return class_; }
  const std::vector<PrivateInfoDist>& items() const noexcept { return items_; }
  const PrivateInfoDist& item(std::size_t i) const;
  /// Expected length of every Info vector.
  std::size_t info_arity() const noexcept;
  /// Product of the item support sizes.
  std::size_t support_profiles() const noexcept;

  /// Membership test for downward-closed families; true for every other class.
  bool feasible(Subset s) const noexcept;

 private:
  std::size_t n_ = 0;
  ValuationClass class_ = Additive{};
  std::vector<PrivateInfoDist> items_;
  std::vector<bool> feasible_mask_;
};

/// Scalar value of one item's information on its own, i.e. V(x_i, {i}).
Rational singleton_value(const ValuationSpec& spec, const Info& info);

/// V({x_i}_{i in S}, S). Reads only info[i] for i in S.
Rational evaluate(const ValuationSpec& spec, std::span<const Info> info, Subset s);

/// Valuation over subsets of [n], materialized as a 2^n table.
class Valuation {
 public:
  Valuation() = default;
  Valuation(std::size_t n, std::vector<Rational> table);

  std::size_t n() const noexcept { return n_; }
  const Rational& operator()(Subset s) const { return table_[s]; }
  const std::vector<Rational>& table() const noexcept { return table_; }
  Rational grand_bundle() const { return table_.back(); }

  friend bool operator==(const Valuation& a, const Valuation& b) { return a.table_ == b.table_; }

 private:
  std::size_t n_ = 0;
  std::vector<Rational> table_;
};

Valuation materialize(const ValuationSpec& spec, std::span<const Info> info);

/// One explicit buyer type. `info` is empty for tables not built from a spec.
struct TypeEntry {
  Rational prob;
  Valuation valuation;
  std::vector<Info> info;
};

/// Explicit finite type space: the input to the exact revenue LP.
class TypeSpace {
 public:
  TypeSpace() = default;
  /// Throws ParameterError on non-positive probabilities, a total other than
  /// one, or tables of the wrong size / with v(empty) != 0.
  TypeSpace(std::size_t n, std::vector<TypeEntry> entries);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<TypeEntry>& entries() const noexcept { return entries_; }
  const TypeEntry& operator[](std::size_t i) const { return entries_[i]; }

  /// Expectation of v(S).
  Rational expected_value(Subset s) const;
  /// Val: expected value of the grand bundle.
  Rational val() const { return expected_value(full_set(n_)); }
  /// Distribution of v(S).
  OneDimDist value_dist(Subset s) const;

 private:
  std::size_t n_ = 0;
  std::vector<TypeEntry> entries_;
};

/// Distribution of v({i}).
OneDimDist single_item_dist(const ValuationSpec& spec, std::size_t i);
OneDimDist single_item_dist(const TypeSpace& ts, std::size_t i);

/// Distribution of v([n]) by enumerating the product support.
OneDimDist grand_bundle_dist(const ValuationSpec& spec, const Caps& caps = {});

struct DemandChoice {
  Subset bundle = 0;
  Rational payment;
  Rational utility;
};

/// Utility-maximizing bundle under item prices. Ties go to the higher payment,
/// then to the lexicographically smallest bundle.
DemandChoice demand_set(const Valuation& v, std::span<const Rational> prices, const Caps& caps = {});

struct AxiomViolation {
  enum class Kind { kEmptySetNonzero, kNotMonotone, kNotSubadditive, kExternality, kNegativeValue };
  Kind kind;
  std::size_t type_index = 0;
  Subset s = 0;
  Subset t = 0;
  std::string detail;
};

std::string to_string(AxiomViolation::Kind kind);

struct AxiomReport {
  bool pass = true;
  std::size_t valuations_checked = 0;
  std::optional<AxiomViolation> violation;
};

/// Exhaustive check of v(empty)=0, monotonicity and subadditivity over every
/// support valuation, plus no-externalities (v(S) depends only on x_S).
AxiomReport check_axioms(const ValuationSpec& spec, const Caps& caps = {});
/// Same for explicit tables. No-externalities is checked only when every
/// entry carries its info vector.
AxiomReport check_axioms(const TypeSpace& ts);

/// Keeps items in A (re-indexed in increasing order).
ValuationSpec restrict(const ValuationSpec& spec, Subset a);
TypeSpace restrict(const TypeSpace& ts, Subset a);

/// Materializes the product distribution. Throws ResourceError when
/// prod_i |support_i| * 2^n exceeds caps.type_space_cells.
TypeSpace enumerate_type_space(const ValuationSpec& spec, const Caps& caps = {});

/// Merges entries with identical tables (info is dropped). Returns the
/// merged space and, for each original entry, the index of its merged entry.
std::pair<TypeSpace, std::vector<std::size_t>> merge_identical(const TypeSpace& ts);

/// Calls fn(info_profile, prob) for every point of the product support.
template <typename Fn>
void for_each_profile(const ValuationSpec& spec, Fn&& fn) {
  const std::size_t n = spec.n();
  std::vector<std::size_t> idx(n, 0);
  std::vector<Info> info(n);
  while (true) {
    Rational prob = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& pt = spec.item(i).support()[idx[i]];
      info[i] = pt.info;
      prob *= pt.prob;
    }
    fn(static_cast<const std::vector<Info>&>(info), static_cast<const Rational&>(prob));
    std::size_t i = 0;
    while (i < n && ++idx[i] == spec.item(i).size()) idx[i++] = 0;
    if (i == n) break;
  }
}

}  // namespace mechlab

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
#include <string>
#include <vector>

#include "mechlab/caps.hpp"
#include "mechlab/rational.hpp"
#include "mechlab/subset.hpp"
#include "mechlab/valuation.hpp"

namespace mechlab {

/// Coordinate-wise map x -> max(scale * x + shift, floor).
struct InfoTransform {
  Rational scale = 1;
  Rational shift = 0;
  Rational floor = 0;

  Info apply(const Info& x) const;
  static InfoTransform identity() { return {}; }
};

/// Two explicit spaces whose entries are coupled index by index.
struct CoupledPair {
  enum class Kind { kTransform, kSingleDimensional };
  Kind kind = Kind::kTransform;
  ValuationSpec base;
  std::vector<InfoTransform> transforms;
  /// Present when the dominating distribution stays inside the model.
  std::optional<ValuationSpec> plus_spec;
  TypeSpace base_space;
  TypeSpace plus_space;
};

CoupledPair couple(const ValuationSpec& base, std::vector<InfoTransform> transforms, const Caps& caps = {});

/// v+(S) = max_i v({i}) * |S| per type.
CoupledPair single_dim_dominator(const ValuationSpec& spec, const Caps& caps = {});

struct DominanceReport {
  /// E[max_S delta(S)].
  Rational delta_bar;
  std::size_t checked = 0;
};

/// Throws DominanceError naming the first type and set where v+ < v.
DominanceReport check_dominance(const CoupledPair& pair);

struct MonotonicityGap {
  Rational rev;
  Rational rev_plus;
  /// nullopt when Rev(D+) = 0 < Rev(D).
  std::optional<Rational> ratio;
};

MonotonicityGap monotonicity_gap(const CoupledPair& pair, const Caps& caps = {});

struct AlphaRow {
  std::string id;
  Rational rev;
  Rational rev_plus;
  std::optional<Rational> gap;
  Rational brev;
  Rational brev_plus;
  std::vector<Rational> q;
  Rational srev_star;
  Rational srev_star_plus;
  bool alpha_pass = false;
  bool brev_monotone = false;
  bool srev_star_monotone = false;
  /// Only meaningful for single-dimensional D+.
  bool rev_equals_brev = true;

  bool pass() const { return alpha_pass && brev_monotone && srev_star_monotone && rev_equals_brev; }
};

struct AlphaReport {
  Rational alpha;
  std::vector<AlphaRow> rows;
  /// Largest finite gap observed.
  Rational measured_alpha;
  bool pass() const;
};

AlphaRow check_pair(const std::string& id, const CoupledPair& pair, const Rational& alpha, const Caps& caps = {});

AlphaReport verify_alpha_monotone(const std::vector<std::pair<std::string, CoupledPair>>& pairs, const Rational& alpha,
                                  const Caps& caps = {});

/// alpha ((37 alpha + 24) SRev + 6 BRev): the simple-auction bound implied by alpha-monotonicity.
Rational converse_bound(const Rational& alpha, const Rational& srev, const Rational& brev);

/// Seeded random search for a pair with Rev(D) > Rev(D+).
std::optional<CoupledPair> search_non_monotone(std::uint64_t seed, std::size_t attempts, const Caps& caps = {});

}  // namespace mechlab

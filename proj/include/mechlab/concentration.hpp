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
#include <vector>

#include "mechlab/bounds.hpp"
#include "mechlab/caps.hpp"
#include "mechlab/core_tail.hpp"
#include "mechlab/rational.hpp"
#include "mechlab/valuation.hpp"

namespace mechlab {

struct LipschitzReport {
  Rational c;
  bool holds = true;
  std::size_t comparisons = 0;
  std::size_t first = 0;
  std::size_t second = 0;
  Subset s = 0;
  Subset t = 0;
};

/// Largest singleton value, then an exhaustive check of the Lipschitz condition.
LipschitzReport lipschitz_constant(const ValuationSpec& spec, const Caps& caps = {});
/// Checks a given constant on an explicit space; every entry must carry its info vectors.
LipschitzReport lipschitz_check(const TypeSpace& ts, const Rational& c, const Caps& caps = {});

/// Smallest support value a with P[v([n]) <= a] >= 1/2.
Rational median_value(const OneDimDist& d);
Rational median_grand_bundle(const ValuationSpec& spec, const Caps& caps = {});
Rational median_grand_bundle(const TypeSpace& ts);

struct ConcentrationParams {
  Rational a;
  Rational c;
  Rational q;
  Rational k;
};

/// P[v([n]) <= a]^(-q) q^(-k); nullopt stands for +infinity.
std::optional<Interval> schechtman_bound(const ConcentrationParams& params, const Rational& prob_le_a);
/// Median form 2^q q^(-k); q = 2 gives 4 * 2^(-k). Throws ParameterError when q <= 1.
Interval schechtman_median_bound(const Rational& q, const Rational& k);

struct TailRow {
  unsigned k = 0;
  Rational threshold;
  /// Exact probability, or the empirical frequency when statistical.
  Rational prob;
  double ci_lo = 0;
  double ci_hi = 0;
  Interval bound;
  Verdict verdict = Verdict::kInconclusive;
};

struct ConcentrationOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 200000;
  bool force_monte_carlo = false;
};

struct ConcentrationReport {
  Rational a;
  Rational c;
  Rational mean;
  bool statistical = false;
  bool lipschitz_holds = true;
  std::vector<TailRow> rows;
  InequalityEntry mean_bound;
  /// Only computed when the grand-bundle distribution is enumerated.
  std::optional<InequalityEntry> median_price;

  bool pass() const;
};

ConcentrationReport verify_concentration(const ValuationSpec& spec, const std::vector<unsigned>& ks,
                                         const ConcentrationOptions& options = {}, const Caps& caps = {});

/// Wilson score interval for `hits` out of `trials` at normal quantile z.
std::pair<double, double> wilson_interval(std::size_t hits, std::size_t trials, double z);

}  // namespace mechlab

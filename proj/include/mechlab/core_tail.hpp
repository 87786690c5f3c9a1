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
#include <string>
#include <vector>

#include "mechlab/bounds.hpp"
#include "mechlab/caps.hpp"
#include "mechlab/rational.hpp"
#include "mechlab/subset.hpp"
#include "mechlab/valuation.hpp"

namespace mechlab {

enum class CutoffMode { kExactHalf, kThresholdOnly };

std::string to_string(CutoffMode mode);
/// Accepts "exact_half" and "threshold_only".
CutoffMode parse_cutoff_mode(const std::string& text);

struct CutoffReport {
  Rational t;
  /// Fraction of the atom at t that counts as tail.
  Rational theta;
  std::vector<Rational> p;
  Rational p_empty;
  CutoffMode mode = CutoffMode::kExactHalf;
  /// False when theta came from bisection.
  bool theta_exact = true;
};

/// Throws DegenerateInstanceError when every singleton value is zero.
CutoffReport compute_cutoff(const ValuationSpec& spec, CutoffMode mode = CutoffMode::kExactHalf);

/// Probability that A is exactly the tail set.
Rational subset_prob(const CutoffReport& report, Subset a);

/// D_A over all items: tail items conditioned above the cutoff, the rest below.
/// Throws EmptyEventError when the event has probability zero.
ValuationSpec conditioned_spec(const ValuationSpec& spec, const CutoffReport& report, Subset a);

struct ConditionedSpaces {
  TypeSpace tail;
  TypeSpace core;
};

ConditionedSpaces conditioned_spaces(const ValuationSpec& spec, const CutoffReport& report, Subset a,
                                     const Caps& caps = {});

/// Val of the core when the tail is empty.
Rational core_value(const ValuationSpec& spec, const CutoffReport& report, const Caps& caps = {});

/// Sum over A of p_A * Rev(tail space of A).
Rational tail_contribution(const ValuationSpec& spec, const CutoffReport& report, const Caps& caps = {});

struct InequalityEntry {
  std::string name;
  std::string statement;
  Interval lhs;
  Interval rhs;
  bool rhs_infinite = false;
  Verdict verdict = Verdict::kInconclusive;

  bool pass() const { return verdict == Verdict::kPass; }
  /// Guaranteed slack: rhs.lo - lhs.hi.
  Rational slack() const { return rhs.lo - lhs.hi; }
};

InequalityEntry make_entry(std::string name, std::string statement, Interval lhs, Interval rhs);

/// Rev(D) against the marginal-mechanism bound for the split (S, complement).
InequalityEntry verify_marginal(const TypeSpace& ts, Subset s, const Rational& epsilon, const Caps& caps = {});
/// Independent-items form: conditional revenue of the complement equals its plain revenue.
InequalityEntry verify_marginal(const ValuationSpec& spec, Subset s, const Rational& epsilon, const Caps& caps = {});

/// 6 * n^(log2 6), exact when n is a power of two.
Interval weak_bound_factor(std::size_t n);

/// (6/p0) (1 + 7L + 6L^2 + L^3) with L = ln(1/p0).
Interval tail_bound_factor(const Rational& p_empty);

struct ChainOptions {
  CutoffMode mode = CutoffMode::kExactHalf;
  Rational epsilon = Rational(1, 2);
};

struct DecompositionReport {
  CutoffReport cutoff;
  Rational rev;
  Rational brev;
  Rational srev_star;
  Rational induced_revenue;
  Rational stitched;
  Rational val_core;
  Rational tail_contribution;
  Rational sum_item_rev;
  std::vector<InequalityEntry> entries;

  bool pass() const;
  const InequalityEntry* find(const std::string& name) const;
};

DecompositionReport verify_chain(const ValuationSpec& spec, const ChainOptions& options = {}, const Caps& caps = {});

}  // namespace mechlab

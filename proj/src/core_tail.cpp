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

#include "mechlab/core_tail.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mechlab/errors.hpp"
#include "mechlab/optimal_rev.hpp"
#include "mechlab/simple_mech.hpp"

namespace mechlab {

std::string to_string(CutoffMode mode) {
  return mode == CutoffMode::kExactHalf ? "exact_half" : "threshold_only";
}

CutoffMode parse_cutoff_mode(const std::string& text) {
  if (text == "exact_half") return CutoffMode::kExactHalf;
  if (text == "threshold_only") return CutoffMode::kThresholdOnly;
  throw ParameterError("unknown cutoff mode '" + text + "'");
}

namespace {

struct ItemSplit {
  Rational above;
  Rational at;
};

std::vector<ItemSplit> split_at(const std::vector<OneDimDist>& dists, const Rational& t) {
  std::vector<ItemSplit> out;
  for (const auto& d : dists) out.push_back({d.prob_gt(t), d.prob_eq(t)});
  return out;
}

Rational empty_prob(const std::vector<ItemSplit>& split, const Rational& theta) {
  Rational p = 1;
  for (const auto& s : split) p *= 1 - s.above - theta * s.at;
  return p;
}

}  // namespace

CutoffReport compute_cutoff(const ValuationSpec& spec, CutoffMode mode) {
  const std::size_t n = spec.n();
  std::vector<OneDimDist> dists;
  std::set<Rational> values;
  for (std::size_t i = 0; i < n; ++i) {
    dists.push_back(single_item_dist(spec, i));
    for (const auto& a : dists.back().atoms()) values.insert(a.value);
  }
  if (values.empty() || *values.rbegin() == 0) {
    throw DegenerateInstanceError("every singleton value is zero; no cutoff exists");
  }
  const Rational half(1, 2);
  CutoffReport r;
  r.mode = mode;
  if (mode == CutoffMode::kThresholdOnly) {
    for (const auto& t : values) {
      if (empty_prob(split_at(dists, t), 0) >= half) {
        r.t = t;
        break;
      }
    }
    r.theta = 0;
  } else {
    // Largest t whose full atom already pushes p_empty to 1/2 or below; the
    // next support value up leaves p_empty above 1/2, so theta lands in (0,1].
    for (auto it = values.rbegin(); it != values.rend(); ++it) {
      if (empty_prob(split_at(dists, *it), 1) <= half) {
        r.t = *it;
        break;
      }
    }
    const auto split = split_at(dists, r.t);
    std::size_t atoms = 0;
    for (const auto& s : split) atoms += s.at > 0 ? 1 : 0;
    if (empty_prob(split, 1) == half) {
      r.theta = 1;
    } else if (atoms == 1) {
      Rational others = 1;
      const ItemSplit* pivot = nullptr;
      for (const auto& s : split) {
        if (s.at > 0) {
          pivot = &s;
        } else {
          others *= 1 - s.above;
        }
      }
      r.theta = (1 - pivot->above - half / others) / pivot->at;
    } else {
      Rational lo = 0, hi = 1;
      const Rational tol(1, mpz_class(1) << 40);
      r.theta_exact = false;
      while (hi - lo > tol) {
        Rational mid = (lo + hi) / 2;
        Rational pe = empty_prob(split, mid);
        if (pe == half) {
          lo = mid;
          r.theta_exact = true;
          break;
        }
        (pe > half ? lo : hi) = mid;
      }
      r.theta = lo;
    }
  }
  const auto split = split_at(dists, r.t);
  r.p_empty = 1;
  for (const auto& s : split) {
    r.p.push_back(s.above + r.theta * s.at);
    r.p_empty *= 1 - r.p.back();
  }
  return r;
}

Rational subset_prob(const CutoffReport& report, Subset a) {
  Rational p = 1;
  for (std::size_t i = 0; i < report.p.size(); ++i) p *= contains(a, i) ? report.p[i] : 1 - report.p[i];
  return p;
}

ValuationSpec conditioned_spec(const ValuationSpec& spec, const CutoffReport& report, Subset a) {
  if (report.p.size() != spec.n()) throw ParameterError("cutoff report does not match the instance");
  std::vector<PrivateInfoDist> items;
  for (std::size_t i = 0; i < spec.n(); ++i) {
    const bool tail = contains(a, i);
    const Rational mass = tail ? report.p[i] : 1 - report.p[i];
    if (mass == 0) throw EmptyEventError("item " + std::to_string(i) + " is never in the " + (tail ? "tail" : "core"));
    std::vector<SupportPoint> pts;
    for (const auto& pt : spec.item(i).support()) {
      const Rational s = singleton_value(spec, pt.info);
      Rational w;
      if (s > report.t) {
        w = tail ? 1 : 0;
      } else if (s == report.t) {
        w = tail ? report.theta : 1 - report.theta;
      } else {
        w = tail ? 0 : 1;
      }
      if (w > 0) pts.push_back({pt.info, w * pt.prob / mass});
    }
    items.emplace_back(std::move(pts));
  }
  return ValuationSpec(spec.n(), spec.valuation_class(), std::move(items));
}

ConditionedSpaces conditioned_spaces(const ValuationSpec& spec, const CutoffReport& report, Subset a,
                                     const Caps& caps) {
  const ValuationSpec d = conditioned_spec(spec, report, a);
  return {enumerate_type_space(restrict(d, a), caps),
          enumerate_type_space(restrict(d, full_set(spec.n()) & ~a), caps)};
}

Rational core_value(const ValuationSpec& spec, const CutoffReport& report, const Caps& caps) {
  return grand_bundle_dist(conditioned_spec(spec, report, 0), caps).mean();
}

Rational tail_contribution(const ValuationSpec& spec, const CutoffReport& report, const Caps& caps) {
  Rational total = 0;
  for (Subset a = 1; a <= full_set(spec.n()); ++a) {
    const Rational pa = subset_prob(report, a);
    if (pa == 0) continue;
    const ValuationSpec d = conditioned_spec(spec, report, a);
    total += pa * exact_rev(enumerate_type_space(restrict(d, a), caps), caps).value;
  }
  return total;
}

InequalityEntry make_entry(std::string name, std::string statement, Interval lhs, Interval rhs) {
  InequalityEntry e{std::move(name), std::move(statement), std::move(lhs), std::move(rhs), false,
                    Verdict::kInconclusive};
  e.verdict = compare_le(e.lhs, e.rhs);
  return e;
}

namespace {

Interval marginal_rhs(const Rational& val_s, const Rational& rev_t, const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw ParameterError("epsilon must lie in (0,1)");
  return Interval::exact((1 / eps + 1 / (1 - eps)) * val_s + rev_t / (1 - eps));
}

const char* kMarginalStatement = "Rev(D) <= (1/eps + 1/(1-eps)) Val(D_S) + 1/(1-eps) E[Rev(D_T | v_S)]";

}  // namespace

InequalityEntry verify_marginal(const TypeSpace& ts, Subset s, const Rational& epsilon, const Caps& caps) {
  const Subset all = full_set(ts.n());
  if (!is_subset(s, all)) throw ParameterError("split set outside the ground set");
  const Subset t = all & ~s;
  const TypeSpace on_s = restrict(ts, s);
  const TypeSpace on_t = restrict(ts, t);
  std::map<std::vector<Rational>, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < ts.size(); ++k) groups[on_s[k].valuation.table()].push_back(k);
  Rational cond_rev = 0;
  for (const auto& [table, members_of] : groups) {
    Rational mass = 0;
    for (std::size_t k : members_of) mass += ts[k].prob;
    std::vector<TypeEntry> entries;
    for (std::size_t k : members_of) entries.push_back({ts[k].prob / mass, on_t[k].valuation, {}});
    cond_rev += mass * exact_rev(TypeSpace(on_t.n(), std::move(entries)), caps).value;
  }
  return make_entry("marginal_mechanism", kMarginalStatement, Interval::exact(exact_rev(ts, caps).value),
                    marginal_rhs(ts.expected_value(s), cond_rev, epsilon));
}

InequalityEntry verify_marginal(const ValuationSpec& spec, Subset s, const Rational& epsilon, const Caps& caps) {
  const Subset all = full_set(spec.n());
  if (!is_subset(s, all)) throw ParameterError("split set outside the ground set");
  const Rational rev = exact_rev(enumerate_type_space(spec, caps), caps).value;
  const Rational val_s = grand_bundle_dist(restrict(spec, s), caps).mean();
  const Rational rev_t = exact_rev(enumerate_type_space(restrict(spec, all & ~s), caps), caps).value;
  return make_entry("marginal_mechanism", kMarginalStatement, Interval::exact(rev),
                    marginal_rhs(val_s, rev_t, epsilon));
}

Interval weak_bound_factor(std::size_t n) {
  if (n == 0) throw ParameterError("weak bound needs at least one item");
  if (std::has_single_bit(n)) {
    Rational f = 6;
    for (std::size_t m = n; m > 1; m >>= 1) f *= 6;
    return Interval::exact(f);
  }
  const Interval log2_6 = log_interval(6) / ln2_interval();
  return Interval::exact(6) * pow_interval(Rational(static_cast<unsigned long>(n)), log2_6);
}

Interval tail_bound_factor(const Rational& p_empty) {
  if (p_empty <= 0 || p_empty > 1) throw ParameterError("p_empty must lie in (0,1]");
  const Interval l = log_interval(1 / p_empty);
  const Interval one = Interval::exact(1);
  const Interval poly = one + Interval::exact(7) * l + Interval::exact(6) * l * l + l * l * l;
  return Interval::exact(6 / p_empty) * poly;
}

bool DecompositionReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass(); });
}

const InequalityEntry* DecompositionReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

DecompositionReport verify_chain(const ValuationSpec& spec, const ChainOptions& options, const Caps& caps) {
  const std::size_t n = spec.n();
  const Rational& eps = options.epsilon;
  if (eps <= 0 || eps >= 1) throw ParameterError("epsilon must lie in (0,1)");
  DecompositionReport r;
  r.cutoff = compute_cutoff(spec, options.mode);
  const CutoffReport& c = r.cutoff;

  r.rev = exact_rev(enumerate_type_space(spec, caps), caps).value;
  r.brev = brev(spec, caps);
  r.srev_star = srev_star(spec, c.p);
  r.induced_revenue = induced_pricing(spec, c.p, caps).revenue;
  r.stitched = 0;
  r.tail_contribution = 0;
  for (Subset a = 0; a <= full_set(n); ++a) {
    const Rational pa = subset_prob(c, a);
    if (pa == 0) continue;
    const ValuationSpec d = conditioned_spec(spec, c, a);
    r.stitched += pa * exact_rev(enumerate_type_space(d, caps), caps).value;
    if (a != 0) r.tail_contribution += pa * exact_rev(enumerate_type_space(restrict(d, a), caps), caps).value;
    if (a == 0) r.val_core = grand_bundle_dist(d, caps).mean();
  }
  r.sum_item_rev = 0;
  for (std::size_t i = 0; i < n; ++i) r.sum_item_rev += myerson_one_dim(single_item_dist(spec, i)).revenue;

  using I = Interval;
  const I rev = I::exact(r.rev);
  const I inv_ln2 = I::exact(1) / ln2_interval();
  const I tail_factor = tail_bound_factor(c.p_empty);

  r.entries.push_back(make_entry("subdomain_stitching", "Rev(D) <= sum_A p_A Rev(D_A)", rev, I::exact(r.stitched)));
  r.entries.push_back(make_entry(
      "core_decomposition", "Rev(D) <= (1/eps + 1/(1-eps)) Val(D_0^C) + 1/(1-eps) sum_A p_A Rev(D_A^T)", rev,
      I::exact((1 / eps + 1 / (1 - eps)) * r.val_core + r.tail_contribution / (1 - eps))));
  r.entries.push_back(make_entry("cutoff_lower_bound", "t p_0 (1 - p_0) <= SRev*_p",
                                 I::exact(c.t * c.p_empty * (1 - c.p_empty)), I::exact(r.srev_star)));
  r.entries.push_back(make_entry("core_value_bound", "Val(D_0^C) <= 6 BRev(D) + 4t/ln2", I::exact(r.val_core),
                                 I::exact(6 * r.brev) + I::exact(4 * c.t) * inv_ln2));
  r.entries.push_back(make_entry("weak_item_bound", "Rev(D) <= 6 n^(log2 6) sum_i Rev(D_i)", rev,
                                 weak_bound_factor(n) * I::exact(r.sum_item_rev)));
  r.entries.push_back(make_entry("tail_bound",
                                 "sum_A p_A Rev(D_A^T) <= (6/p_0)(1 + 7L + 6L^2 + L^3) SRev*_p, L = ln(1/p_0)",
                                 I::exact(r.tail_contribution), tail_factor * I::exact(r.srev_star)));
  if (options.mode == CutoffMode::kExactHalf) {
    r.entries.push_back(make_entry("main_bound", "Rev(D) <= 314 SRev*_p + 24 BRev(D)", rev,
                                   I::exact(314 * r.srev_star + 24 * r.brev)));
  } else if (c.p_empty == 1) {
    InequalityEntry e = make_entry("main_bound", "Rev(D) <= (16/(ln2 p_0 (1-p_0)) + 2 C_tail) SRev*_p + 24 BRev(D)",
                                   rev, rev);
    e.rhs_infinite = true;
    e.verdict = Verdict::kPass;
    r.entries.push_back(std::move(e));
  } else {
    const I core_factor = I::exact(16 / (c.p_empty * (1 - c.p_empty))) * inv_ln2;
    r.entries.push_back(make_entry("main_bound",
                                   "Rev(D) <= (16/(ln2 p_0 (1-p_0)) + 2 C_tail) SRev*_p + 24 BRev(D)", rev,
                                   (core_factor + I::exact(2) * tail_factor) * I::exact(r.srev_star) +
                                       I::exact(24 * r.brev)));
  }
  return r;
}

}  // namespace mechlab

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

#include "mechlab/concentration.hpp"

#include <cmath>

#include "mechlab/errors.hpp"
#include "mechlab/rng.hpp"
#include "mechlab/simple_mech.hpp"

namespace mechlab {

LipschitzReport lipschitz_check(const TypeSpace& ts, const Rational& c, const Caps& caps) {
  const std::size_t n = ts.n();
  const std::size_t cells = std::size_t{1} << n;
  const std::size_t work = ts.size() * ts.size() * cells * cells;
  if (work > caps.exhaustive_checks) throw ResourceError("Lipschitz check", work, caps.exhaustive_checks);
  LipschitzReport r;
  r.c = c;
  for (std::size_t x = 0; x < ts.size(); ++x) {
    if (ts[x].info.size() != n) throw ParameterError("Lipschitz check needs the private info of every type");
  }
  for (std::size_t x = 0; x < ts.size(); ++x) {
    for (std::size_t y = 0; y < ts.size(); ++y) {
      Subset differ = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (ts[x].info[i] != ts[y].info[i]) differ |= singleton(i);
      }
      for (Subset s = 0; s < cells; ++s) {
        for (Subset t = 0; t < cells; ++t) {
          ++r.comparisons;
          const int d = cardinality(s ^ t) + cardinality(s & t & differ);
          Rational gap = ts[x].valuation(s) - ts[y].valuation(t);
          if (abs(gap) > c * d) {
            r.holds = false;
            r.first = x;
            r.second = y;
            r.s = s;
            r.t = t;
            return r;
          }
        }
      }
    }
  }
  return r;
}

LipschitzReport lipschitz_constant(const ValuationSpec& spec, const Caps& caps) {
  Rational c = 0;
  for (std::size_t i = 0; i < spec.n(); ++i) c = rmax(c, single_item_dist(spec, i).max_value());
  return lipschitz_check(enumerate_type_space(spec, caps), c, caps);
}

Rational median_value(const OneDimDist& d) {
  if (d.empty()) throw ParameterError("empty distribution");
  Rational below = 0;
  for (const auto& a : d.atoms()) {
    below += a.prob;
    if (below >= Rational(1, 2)) return a.value;
  }
  return d.max_value();
}

Rational median_grand_bundle(const ValuationSpec& spec, const Caps& caps) {
  return median_value(grand_bundle_dist(spec, caps));
}

Rational median_grand_bundle(const TypeSpace& ts) { return median_value(ts.value_dist(full_set(ts.n()))); }

namespace {

bool small_integer(const Rational& x) { return x.get_den() == 1 && abs(x) <= 4096; }

/// base^exponent for base > 0, exact when the exponent is a small integer.
Interval power(const Rational& base, const Rational& exponent) {
  if (small_integer(exponent)) {
    const long e = exponent.get_num().get_si();
    Rational p = pow(base, static_cast<unsigned>(std::labs(e)));
    return Interval::exact(e >= 0 ? p : 1 / p);
  }
  return pow_interval(base, Interval::exact(exponent));
}

}  // namespace

std::optional<Interval> schechtman_bound(const ConcentrationParams& params, const Rational& prob_le_a) {
  if (params.q <= 0 || params.k <= 0) throw ParameterError("q and k must be positive");
  if (prob_le_a < 0 || prob_le_a > 1) throw ParameterError("probability outside [0,1]");
  if (prob_le_a == 0) return std::nullopt;
  return power(prob_le_a, -params.q) * power(params.q, -params.k);
}

Interval schechtman_median_bound(const Rational& q, const Rational& k) {
  if (q <= 1) throw ParameterError("median form needs q > 1");
  if (k < 0) throw ParameterError("k must be nonnegative");
  return power(2, q) * power(q, -k);
}

std::pair<double, double> wilson_interval(std::size_t hits, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / nn;
  const double denom = 1 + z * z / nn;
  const double center = (p + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

bool ConcentrationReport::pass() const {
  if (!lipschitz_holds || !mean_bound.pass()) return false;
  if (median_price && !median_price->pass()) return false;
  for (const auto& row : rows) {
    if (row.verdict != Verdict::kPass) return false;
  }
  return true;
}

ConcentrationReport verify_concentration(const ValuationSpec& spec, const std::vector<unsigned>& ks,
                                         const ConcentrationOptions& options, const Caps& caps) {
  ConcentrationReport r;
  const Subset all = full_set(spec.n());
  r.c = 0;
  for (std::size_t i = 0; i < spec.n(); ++i) r.c = rmax(r.c, single_item_dist(spec, i).max_value());
  const bool exact = !options.force_monte_carlo && spec.support_profiles() <= caps.type_space_cells;
  constexpr double z = 3.29;
  const Interval ln2_inv = Interval::exact(1) / ln2_interval();

  if (exact) {
    const OneDimDist d = grand_bundle_dist(spec, caps);
    r.a = median_value(d);
    r.mean = d.mean();
    const std::size_t cells = std::size_t{1} << spec.n();
    const std::size_t work = spec.support_profiles() * spec.support_profiles() * cells * cells;
    if (work <= caps.exhaustive_checks) r.lipschitz_holds = lipschitz_check(enumerate_type_space(spec, caps), r.c, caps).holds;
    for (unsigned k : ks) {
      TailRow row;
      row.k = k;
      row.threshold = 3 * r.a + k * r.c;
      row.prob = d.prob_ge(row.threshold);
      row.ci_lo = row.ci_hi = row.prob.get_d();
      row.bound = schechtman_median_bound(2, k);
      row.verdict = compare_le(Interval::exact(row.prob), row.bound);
      r.rows.push_back(std::move(row));
    }
    r.mean_bound = make_entry("mean_concentration", "E[v([n])] <= 3a + 4c/ln2", Interval::exact(r.mean),
                              Interval::exact(3 * r.a) + Interval::exact(4 * r.c) * ln2_inv);
  } else {
    r.statistical = true;
    std::vector<std::vector<double>> cumulative(spec.n());
    for (std::size_t i = 0; i < spec.n(); ++i) {
      double acc = 0;
      for (const auto& pt : spec.item(i).support()) cumulative[i].push_back(acc += pt.prob.get_d());
    }
    auto rng = make_rng(options.seed, 0);
    std::vector<Rational> draws;
    draws.reserve(options.samples);
    std::vector<Info> info(spec.n());
    for (std::size_t s = 0; s < options.samples; ++s) {
      for (std::size_t i = 0; i < spec.n(); ++i) info[i] = spec.item(i).support()[sample_cumulative(rng, cumulative[i])].info;
      draws.push_back(evaluate(spec, info, all));
    }
    std::sort(draws.begin(), draws.end());
    r.a = draws[(draws.size() - 1) / 2];
    double mean = 0, sq = 0;
    for (const auto& v : draws) {
      const double x = v.get_d();
      mean += x;
      sq += x * x;
    }
    const double nn = static_cast<double>(draws.size());
    mean /= nn;
    const double se = std::sqrt(std::max(0.0, sq / nn - mean * mean) / nn);
    r.mean = from_double(mean);
    for (unsigned k : ks) {
      TailRow row;
      row.k = k;
      row.threshold = 3 * r.a + k * r.c;
      const auto first = std::lower_bound(draws.begin(), draws.end(), row.threshold);
      const std::size_t hits = static_cast<std::size_t>(draws.end() - first);
      row.prob = ratio(static_cast<long>(hits), static_cast<long>(draws.size()));
      std::tie(row.ci_lo, row.ci_hi) = wilson_interval(hits, draws.size(), z);
      row.bound = schechtman_median_bound(2, k);
      row.verdict = from_double(row.ci_lo) <= row.bound.hi ? Verdict::kPass : Verdict::kFail;
      r.rows.push_back(std::move(row));
    }
    r.mean_bound = make_entry("mean_concentration", "E[v([n])] <= 3a + 4c/ln2",
                              Interval{from_double(mean - z * se), from_double(mean + z * se)},
                              Interval::exact(3 * r.a) + Interval::exact(4 * r.c) * ln2_inv);
    if (r.mean_bound.verdict == Verdict::kInconclusive && from_double(mean - z * se) <= r.mean_bound.rhs.hi) {
      r.mean_bound.verdict = Verdict::kPass;
    }
  }
  if (exact) {
    r.median_price = make_entry("median_price", "a/2 <= BRev(D)", Interval::exact(r.a / 2),
                                Interval::exact(brev(spec, caps)));
  }
  return r;
}

}  // namespace mechlab

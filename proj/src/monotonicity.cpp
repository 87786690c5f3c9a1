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

#include "mechlab/monotonicity.hpp"

#include <map>

#include "mechlab/core_tail.hpp"
#include "mechlab/errors.hpp"
#include "mechlab/optimal_rev.hpp"
#include "mechlab/rng.hpp"
#include "mechlab/simple_mech.hpp"

namespace mechlab {

Info InfoTransform::apply(const Info& x) const {
  Info out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(rmax(scale * v + shift, floor));
  return out;
}

CoupledPair couple(const ValuationSpec& base, std::vector<InfoTransform> transforms, const Caps& caps) {
  const std::size_t n = base.n();
  if (transforms.size() != n) throw ParameterError("one transform per item is required");
  std::vector<PrivateInfoDist> items;
  for (std::size_t i = 0; i < n; ++i) {
    std::map<Info, Rational> merged;
    for (const auto& pt : base.item(i).support()) merged[transforms[i].apply(pt.info)] += pt.prob;
    std::vector<SupportPoint> pts;
    for (auto& [info, prob] : merged) pts.push_back({info, prob});
    items.emplace_back(std::move(pts));
  }
  CoupledPair pair;
  pair.kind = CoupledPair::Kind::kTransform;
  pair.base = base;
  pair.plus_spec = ValuationSpec(n, base.valuation_class(), std::move(items));
  pair.base_space = enumerate_type_space(base, caps);
  std::vector<TypeEntry> plus;
  for (const auto& e : pair.base_space.entries()) {
    std::vector<Info> info;
    for (std::size_t i = 0; i < n; ++i) info.push_back(transforms[i].apply(e.info[i]));
    plus.push_back({e.prob, materialize(*pair.plus_spec, info), info});
  }
  pair.plus_space = TypeSpace(n, std::move(plus));
  pair.transforms = std::move(transforms);
  check_dominance(pair);
  return pair;
}

CoupledPair single_dim_dominator(const ValuationSpec& spec, const Caps& caps) {
  const std::size_t n = spec.n();
  CoupledPair pair;
  pair.kind = CoupledPair::Kind::kSingleDimensional;
  pair.base = spec;
  pair.base_space = enumerate_type_space(spec, caps);
  const std::size_t cells = std::size_t{1} << n;
  std::vector<TypeEntry> plus;
  for (const auto& e : pair.base_space.entries()) {
    Rational top = 0;
    for (std::size_t i = 0; i < n; ++i) top = rmax(top, e.valuation(singleton(i)));
    std::vector<Rational> table(cells);
    for (Subset s = 0; s < cells; ++s) table[s] = top * cardinality(s);
    plus.push_back({e.prob, Valuation(n, std::move(table)), {}});
  }
  pair.plus_space = TypeSpace(n, std::move(plus));
  check_dominance(pair);
  return pair;
}

DominanceReport check_dominance(const CoupledPair& pair) {
  const auto& base = pair.base_space;
  const auto& plus = pair.plus_space;
  if (base.size() != plus.size() || base.n() != plus.n()) throw ParameterError("coupled spaces are not aligned");
  const std::size_t cells = std::size_t{1} << base.n();
  DominanceReport r;
  r.delta_bar = 0;
  for (std::size_t k = 0; k < base.size(); ++k) {
    Rational top = 0;
    for (Subset s = 0; s < cells; ++s) {
      ++r.checked;
      Rational delta = plus[k].valuation(s) - base[k].valuation(s);
      if (delta < 0) {
        throw DominanceError("coupling fails at type " + std::to_string(k) + ", set " + subset_to_string(s) +
                             ": v+(S) - v(S) = " + to_string(delta));
      }
      if (delta > top) top = delta;
    }
    r.delta_bar += base[k].prob * top;
  }
  return r;
}

MonotonicityGap monotonicity_gap(const CoupledPair& pair, const Caps& caps) {
  MonotonicityGap g;
  g.rev = exact_rev(pair.base_space, caps).value;
  g.rev_plus = exact_rev(pair.plus_space, caps).value;
  if (g.rev_plus > 0) {
    g.ratio = g.rev / g.rev_plus;
  } else if (g.rev == 0) {
    g.ratio = Rational(1);
  }
  return g;
}

AlphaRow check_pair(const std::string& id, const CoupledPair& pair, const Rational& alpha, const Caps& caps) {
  AlphaRow row;
  row.id = id;
  const MonotonicityGap g = monotonicity_gap(pair, caps);
  row.rev = g.rev;
  row.rev_plus = g.rev_plus;
  row.gap = g.ratio;
  row.alpha_pass = alpha * g.rev_plus >= g.rev;
  row.brev = brev(pair.base_space);
  row.brev_plus = brev(pair.plus_space);
  row.brev_monotone = row.brev_plus >= row.brev;
  try {
    row.q = compute_cutoff(pair.base).p;
  } catch (const DegenerateInstanceError&) {
    row.q.assign(pair.base.n(), Rational(0));
  }
  row.srev_star = srev_star(pair.base_space, row.q);
  row.srev_star_plus = srev_star(pair.plus_space, row.q);
  row.srev_star_monotone = row.srev_star_plus >= row.srev_star;
  if (pair.kind == CoupledPair::Kind::kSingleDimensional) row.rev_equals_brev = row.rev_plus == row.brev_plus;
  return row;
}

bool AlphaReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const AlphaRow& r) { return r.pass(); });
}

AlphaReport verify_alpha_monotone(const std::vector<std::pair<std::string, CoupledPair>>& pairs, const Rational& alpha,
                                  const Caps& caps) {
  AlphaReport r;
  r.alpha = alpha;
  r.measured_alpha = 0;
  for (const auto& [id, pair] : pairs) {
    r.rows.push_back(check_pair(id, pair, alpha, caps));
    if (r.rows.back().gap) r.measured_alpha = rmax(r.measured_alpha, *r.rows.back().gap);
  }
  return r;
}

Rational converse_bound(const Rational& alpha, const Rational& srev, const Rational& brev) {
  return alpha * ((37 * alpha + 24) * srev + 6 * brev);
}

std::optional<CoupledPair> search_non_monotone(std::uint64_t seed, std::size_t attempts, const Caps& caps) {
  for (std::size_t a = 0; a < attempts; ++a) {
    auto rng = make_rng(seed, a);
    std::uniform_int_distribution<int> value(1, 8), weight(1, 3), coin(0, 1);
    std::vector<PrivateInfoDist> items;
    for (std::size_t i = 0; i < 2; ++i) {
      int lo = value(rng), hi = value(rng);
      if (lo == hi) ++hi;
      const int wl = weight(rng), wh = weight(rng);
      items.emplace_back(std::vector<SupportPoint>{{{Rational(lo)}, ratio(wl, wl + wh)},
                                                   {{Rational(hi)}, ratio(wh, wl + wh)}});
    }
    ValuationClass cls = coin(rng) ? ValuationClass{Additive{}} : ValuationClass{KDemand{1}};
    ValuationSpec spec(2, cls, std::move(items));
    std::vector<InfoTransform> t(2);
    t[static_cast<std::size_t>(coin(rng))].shift = 1;
    CoupledPair pair = couple(spec, std::move(t), caps);
    const MonotonicityGap g = monotonicity_gap(pair, caps);
    if (g.rev > g.rev_plus) return pair;
  }
  return std::nullopt;
}

}  // namespace mechlab

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

#include "doctest.h"
#include "helpers.hpp"
#include "mechlab/errors.hpp"
#include "mechlab/monotonicity.hpp"
#include "mechlab/optimal_rev.hpp"
#include "mechlab/simple_mech.hpp"

using namespace mechlab;
using namespace mechlab::testing;

namespace {

InfoTransform shift(const Rational& s) {
  InfoTransform t;
  t.shift = s;
  return t;
}

}  // namespace

TEST_SUITE("monotonicity") {
  TEST_CASE("transforms") {
    InfoTransform t;
    t.scale = 2;
    t.shift = -3;
    t.floor = 1;
    CHECK(t.apply({R(1), R(5)}) == Info{R(1), R(7)});
    CHECK(InfoTransform::identity().apply({R(3, 2)}) == Info{R(3, 2)});
  }

  TEST_CASE("dominance") {
    const ValuationSpec s = uniform12();
    const CoupledPair id = couple(s, {InfoTransform::identity(), InfoTransform::identity()});
    CHECK(check_dominance(id).delta_bar == 0);
    const CoupledPair up = couple(s, {shift(1), shift(1)});
    CHECK(check_dominance(up).delta_bar == 2);
    CHECK_THROWS_AS(couple(s, {shift(-1), shift(0)}), DominanceError);
  }

  TEST_CASE("single-dimensional dominator") {
    const ValuationSpec pm(2, Additive{}, {PrivateInfoDist::point_mass({R(1)}), PrivateInfoDist::point_mass({R(2)})});
    const CoupledPair p = single_dim_dominator(pm);
    REQUIRE(p.plus_space.size() == 1);
    for (Subset s = 0; s < 4; ++s) CHECK(p.plus_space[0].valuation(s) == 2 * static_cast<long>(cardinality(s)));

    const ValuationSpec one = iid(1, Additive{}, PrivateInfoDist::uniform({1, 2}));
    const CoupledPair q = single_dim_dominator(one);
    for (std::size_t k = 0; k < q.base_space.size(); ++k) CHECK(q.plus_space[k].valuation == q.base_space[k].valuation);

    const CoupledPair u = single_dim_dominator(uniform12(KDemand{1}));
    for (std::size_t k = 0; k < u.base_space.size(); ++k) {
      const Rational top = rmax(u.base_space[k].valuation(1), u.base_space[k].valuation(2));
      CHECK(u.plus_space[k].valuation(3) == 2 * top);
    }
    // Rev(D+) = BRev(D+) on single-dimensional spaces.
    CHECK(exact_rev(u.plus_space).value == brev(u.plus_space));
  }

  TEST_CASE("gaps") {
    const ValuationSpec s = uniform12(KDemand{1});
    const CoupledPair id = couple(s, {InfoTransform::identity(), InfoTransform::identity()});
    const MonotonicityGap g = monotonicity_gap(id);
    REQUIRE(g.ratio);
    CHECK(*g.ratio == 1);
    const CoupledPair dom = single_dim_dominator(s);
    const MonotonicityGap d = monotonicity_gap(dom);
    REQUIRE(d.ratio);
    CHECK(*d.ratio <= 2 * d.rev / brev(dom.plus_space));
    CHECK(*d.ratio <= 338);
  }

  TEST_CASE("alpha report") {
    const ValuationSpec s = uniform12();
    std::vector<std::pair<std::string, CoupledPair>> pairs = {
        {"id", couple(s, {InfoTransform::identity(), InfoTransform::identity()})},
        {"shift", couple(s, {shift(R(1, 2)), shift(0)})},
        {"dom", single_dim_dominator(s)}};
    const AlphaReport r = verify_alpha_monotone(pairs, 1);
    CHECK(r.pass());
    CHECK(r.rows[0].rev == r.rows[0].rev_plus);
    for (const auto& row : r.rows) {
      CHECK(row.brev_monotone);
      CHECK(row.srev_star_monotone);
    }
    CHECK(verify_alpha_monotone(pairs, 338).pass());
  }

  TEST_CASE("converse bound") {
    CHECK(converse_bound(R(2), R(1), R(3)) == 2 * ((37 * 2 + 24) * 1 + 6 * 3));
  }
}

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

#include <cmath>
#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "mechlab/core_tail.hpp"
#include "mechlab/errors.hpp"
#include "mechlab/optimal_rev.hpp"
#include "mechlab/simple_mech.hpp"

using namespace mechlab;
using namespace mechlab::testing;

TEST_SUITE("core_tail") {
  TEST_CASE("cutoff for one item") {
    const ValuationSpec s = iid(1, Additive{}, PrivateInfoDist::uniform({1, 2}));
    const CutoffReport c = compute_cutoff(s);
    CHECK(c.t == 2);
    CHECK(c.theta == 1);
    CHECK(c.theta_exact);
    CHECK(c.p_empty == R(1, 2));
  }

  TEST_CASE("cutoff for point masses") {
    const ValuationSpec s = iid(1, Additive{}, PrivateInfoDist::point_mass({R(3)}));
    const CutoffReport c = compute_cutoff(s);
    CHECK(c.t == 3);
    CHECK(c.theta == R(1, 2));
    CHECK(c.p_empty == R(1, 2));
  }

  TEST_CASE("cutoff by bisection") {
    const CutoffReport c = compute_cutoff(uniform12());
    CHECK(c.t == 2);
    CHECK_FALSE(c.theta_exact);
    // (1 - theta/2)^2 = 1/2.
    CHECK(std::abs(c.theta.get_d() - (2 - std::sqrt(2.0))) < 1e-11);
    CHECK(c.p_empty >= R(1, 2));
    CHECK(c.p_empty.get_d() - 0.5 < 1e-11);
  }

  TEST_CASE("threshold mode and degenerate input") {
    const CutoffReport c = compute_cutoff(uniform12(), CutoffMode::kThresholdOnly);
    CHECK(c.theta == 0);
    // t = 1 leaves p_empty = 1/4; t = 2 empties the tail.
    CHECK(c.t == 2);
    CHECK(c.p_empty == 1);
    CHECK(parse_cutoff_mode("threshold_only") == CutoffMode::kThresholdOnly);
    CHECK_THROWS(parse_cutoff_mode("half"));
    const ValuationSpec zero = iid(2, Additive{}, PrivateInfoDist::point_mass({R(0)}));
    CHECK_THROWS_AS(compute_cutoff(zero), DegenerateInstanceError);
  }

  TEST_CASE("subset probabilities sum to one") {
    const ValuationSpec s(3, Additive{},
                          {PrivateInfoDist::uniform({1, 2, 3}), PrivateInfoDist::uniform({0, 2}),
                           scalar_dist({{R(1), R(1, 3)}, {R(4), R(2, 3)}})});
    for (auto mode : {CutoffMode::kExactHalf, CutoffMode::kThresholdOnly}) {
      const CutoffReport c = compute_cutoff(s, mode);
      Rational total = 0;
      for (Subset a = 0; a < 8; ++a) total += subset_prob(c, a);
      CHECK(total == 1);
      CHECK(subset_prob(c, 0) == c.p_empty);
      CHECK(subset_prob(c, 7) == c.p[0] * c.p[1] * c.p[2]);
    }
  }

  TEST_CASE("conditioning recomposes the prior") {
    const ValuationSpec s = iid(2, Additive{}, PrivateInfoDist::uniform({1, 2, 3}));
    const CutoffReport c = compute_cutoff(s);
    const TypeSpace ts = enumerate_type_space(s);
    std::map<std::vector<Rational>, Rational> mix;
    for (Subset a = 0; a < 4; ++a) {
      const Rational pa = subset_prob(c, a);
      if (pa == 0) continue;
      const TypeSpace part = enumerate_type_space(conditioned_spec(s, c, a));
      for (const auto& e : part.entries()) {
        mix[e.valuation.table()] += pa * e.prob;
      }
    }
    std::map<std::vector<Rational>, Rational> prior;
    for (const auto& e : ts.entries()) prior[e.valuation.table()] += e.prob;
    CHECK(mix == prior);
  }

  TEST_CASE("conditioned spaces for one item") {
    const ValuationSpec s = iid(1, Additive{}, PrivateInfoDist::uniform({1, 2}));
    const CutoffReport c = compute_cutoff(s);
    const ConditionedSpaces sp = conditioned_spaces(s, c, 1);
    REQUIRE(sp.tail.size() == 1);
    CHECK(sp.tail[0].valuation(1) == 2);
    CHECK(tail_contribution(s, c) == rev_q(single_item_dist(s, 0), c.p[0]).revenue);
    CutoffReport all_core = c;
    all_core.p = {R(0)};
    all_core.theta = 0;
    CHECK_THROWS_AS(conditioned_spec(s, all_core, 1), EmptyEventError);
  }

  TEST_CASE("core value") {
    const ValuationSpec pm = iid(1, Additive{}, PrivateInfoDist::point_mass({R(5)}));
    CHECK(core_value(pm, compute_cutoff(pm)) == 5);
    const ValuationSpec s = iid(1, Additive{}, PrivateInfoDist::uniform({1, 2}));
    // Tail empty means v = 1.
    CHECK(core_value(s, compute_cutoff(s)) == 1);
  }

  TEST_CASE("marginal mechanism bound") {
    const ValuationSpec s = uniform12();
    const InequalityEntry e = verify_marginal(s, 0b01, R(1, 2));
    CHECK(e.rhs.lo == 8);
    CHECK(e.lhs.lo == R(9, 4));
    CHECK(e.pass());
    const TypeSpace ts = enumerate_type_space(s);
    const InequalityEntry g = verify_marginal(ts, 0b01, R(1, 2));
    CHECK(g.pass());
    const InequalityEntry none = verify_marginal(ts, 0, R(1, 2));
    CHECK(none.rhs.lo == 2 * none.lhs.lo);
  }

  TEST_CASE("constant factors") {
    CHECK(weak_bound_factor(1).lo == 6);
    CHECK(weak_bound_factor(2).lo == 36);
    CHECK(weak_bound_factor(4).lo == 216);
    const Interval f3 = weak_bound_factor(3);
    CHECK(f3.lo.get_d() == doctest::Approx(6 * std::pow(3.0, std::log2(6.0))).epsilon(1e-12));
    const Interval t = tail_bound_factor(R(1, 2));
    const double l = std::log(2.0);
    CHECK(t.lo.get_d() == doctest::Approx(12 * (1 + 7 * l + 6 * l * l + l * l * l)).epsilon(1e-12));
    CHECK(t.hi <= 109);
  }

  TEST_CASE("chain on small instances") {
    const ValuationSpec one = iid(1, Additive{}, scalar_dist({{R(1), R(1, 3)}, {R(3), R(1, 2)}, {R(4), R(1, 6)}}));
    const ValuationSpec pm = iid(3, KDemand{2}, PrivateInfoDist::point_mass({R(2)}));
    for (const auto* s : {&one, &pm}) {
      for (auto mode : {CutoffMode::kExactHalf, CutoffMode::kThresholdOnly}) {
        const DecompositionReport r = verify_chain(*s, {mode, R(1, 2)});
        CHECK(r.entries.size() == 7);
        for (const auto& e : r.entries) {
          INFO(e.name);
          CHECK(e.pass());
        }
      }
    }
    const DecompositionReport r = verify_chain(pm);
    const auto* main = r.find("main_bound");
    REQUIRE(main);
    CHECK(main->slack() > 0);
    CHECK(r.find("subdomain_stitching"));
    CHECK(r.find("core_decomposition"));
    CHECK(r.find("cutoff_lower_bound"));
    CHECK(r.find("core_value_bound"));
    CHECK(r.find("weak_item_bound"));
    CHECK(r.find("tail_bound"));
  }
}

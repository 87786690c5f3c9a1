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

using namespace mechlab;
using namespace mechlab::testing;

TEST_SUITE("valuation_core") {
  TEST_CASE("evaluate by class") {
    const auto u = PrivateInfoDist::uniform({1, 2});
    const ValuationSpec add = iid(2, Additive{}, u);
    const std::vector<Info> x = {{R(1)}, {R(2)}};
    CHECK(evaluate(add, x, 0b11) == 3);
    CHECK(evaluate(add, x, 0) == 0);

    const ValuationSpec ud = iid(2, KDemand{1}, u);
    CHECK(evaluate(ud, x, 0b11) == 2);

    std::vector<SupportPoint> a = {{{R(1), R(0)}, R(1)}};
    std::vector<SupportPoint> b = {{{R(0), R(3)}, R(1)}};
    const ValuationSpec xos(2, Xos{2}, {PrivateInfoDist(a), PrivateInfoDist(b)});
    const std::vector<Info> xv = {{R(1), R(0)}, {R(0), R(3)}};
    CHECK(evaluate(xos, xv, 0b11) == 3);
    CHECK(evaluate(xos, xv, 0b01) == 1);
    CHECK(evaluate(xos, xv, 0) == 0);

    // Matroid-like family: only singletons feasible.
    const ValuationSpec dc(2, DownwardClosed{{0, 1, 2}}, {u, u});
    CHECK(evaluate(dc, x, 0b11) == 2);
  }

  TEST_CASE("invalid parameters") {
    const auto u = PrivateInfoDist::uniform({1, 2});
    CHECK_THROWS_AS(ValuationSpec(2, KDemand{3}, {u, u}), ParameterError);
    CHECK_THROWS_AS(ValuationSpec(2, DownwardClosed{{0, 1}}, {u, u}), ParameterError);
    CHECK_THROWS_AS(ValuationSpec(2, DownwardClosed{{0, 1, 2, 3, 4}}, {u, u}), ParameterError);
    CHECK_THROWS_AS(PrivateInfoDist({{{R(1)}, R(1, 2)}}), ParameterError);
    CHECK_THROWS_AS(PrivateInfoDist({{{R(-1)}, R(1)}}), ParameterError);
    CHECK_THROWS_AS(PrivateInfoDist({{{R(1)}, R(1, 2)}, {{R(1)}, R(1, 2)}}), ParameterError);
    // Arity mismatch for XOS.
    CHECK_THROWS_AS(ValuationSpec(2, Xos{2}, {u, u}), ParameterError);
  }

  TEST_CASE("single item distributions") {
    const OneDimDist d = single_item_dist(uniform12(), 0);
    REQUIRE(d.size() == 2);
    CHECK(d.prob_eq(1) == R(1, 2));
    CHECK(d.prob_eq(2) == R(1, 2));

    const ValuationSpec xos(1, Xos{2}, {PrivateInfoDist({{{R(1), R(3)}, R(1)}})});
    CHECK(single_item_dist(xos, 0) == OneDimDist::point_mass(3));

    const ValuationSpec ud = iid(2, KDemand{1}, scalar_dist({{R(5), R(1, 3)}, {R(0), R(2, 3)}}));
    const OneDimDist e = single_item_dist(ud, 1);
    CHECK(e.prob_eq(5) == R(1, 3));
    CHECK(e.prob_eq(0) == R(2, 3));
  }

  TEST_CASE("demand set with seller-favorable ties") {
    const Valuation v(2, {R(0), R(1), R(2), R(3)});
    const std::vector<Rational> zero = {R(0), R(0)};
    CHECK(demand_set(v, zero).bundle == 0b11);
    const std::vector<Rational> high = {R(4), R(4)};
    const auto none = demand_set(v, high);
    CHECK(none.bundle == 0);
    CHECK(none.payment == 0);
    const std::vector<Rational> p = {R(2), R(1)};
    const auto c = demand_set(v, p);
    CHECK(c.bundle == 0b10);
    CHECK(c.payment == 1);
    CHECK(c.utility == 1);
    // Tie between {0} at price 1 and nothing: the sale wins.
    const std::vector<Rational> tie = {R(1), R(5)};
    CHECK(demand_set(v, tie).bundle == 0b01);
  }

  TEST_CASE("demand set invariant under common scaling") {
    const Valuation v(3, {R(0), R(2), R(3), R(4), R(1), R(3), R(4), R(5)});
    const std::vector<Rational> p = {R(1), R(3, 2), R(1, 2)};
    const auto a = demand_set(v, p);
    std::vector<Rational> t2 = v.table(), p2 = p;
    for (auto& x : t2) x *= R(7, 3);
    for (auto& x : p2) x *= R(7, 3);
    const auto b = demand_set(Valuation(3, t2), p2);
    CHECK(a.bundle == b.bundle);
    CHECK(a.payment * R(7, 3) == b.payment);
  }

  TEST_CASE("axioms") {
    CHECK(check_axioms(uniform12()).pass);
    CHECK(check_axioms(uniform12(KDemand{1})).pass);
    const TypeSpace bad = table_space(2, {{R(1), {R(0), R(1), R(1), R(3)}}});
    const AxiomReport r = check_axioms(bad);
    CHECK_FALSE(r.pass);
    REQUIRE(r.violation);
    CHECK(r.violation->kind == AxiomViolation::Kind::kNotSubadditive);
  }

  TEST_CASE("restriction") {
    const ValuationSpec s = uniform12();
    CHECK(enumerate_type_space(restrict(s, 0b11)).size() == 4);
    const TypeSpace empty = restrict(enumerate_type_space(s), 0);
    CHECK(empty.n() == 0);
    const ValuationSpec one = restrict(s, 0b01);
    CHECK(one.n() == 1);
    CHECK(single_item_dist(one, 0) == single_item_dist(s, 0));
  }

  TEST_CASE("type space enumeration") {
    const TypeSpace ts = enumerate_type_space(uniform12());
    REQUIRE(ts.size() == 4);
    Rational total = 0;
    for (const auto& e : ts.entries()) {
      CHECK(e.prob == R(1, 4));
      CHECK(e.valuation.table().size() == 4);
      total += e.prob;
    }
    CHECK(total == 1);
    const ValuationSpec pm = iid(3, Additive{}, PrivateInfoDist::point_mass({R(2)}));
    CHECK(enumerate_type_space(pm).size() == 1);
    Caps tiny;
    tiny.type_space_cells = 8;
    CHECK_THROWS_AS(enumerate_type_space(uniform12(), tiny), ResourceError);
  }
}

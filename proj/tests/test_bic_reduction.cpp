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
#include "mechlab/bic_reduction.hpp"
#include "mechlab/errors.hpp"

using namespace mechlab;
using namespace mechlab::testing;

namespace {

InfoTransform shift(const Rational& s) {
  InfoTransform t;
  t.shift = s;
  return t;
}

struct Fixture {
  ValuationSpec spec = uniform12();
  TypeSpace ts = enumerate_type_space(spec);
  DirectMechanism m = serial_posted_price({ts, ts}, {R(3, 2), R(3, 2)});
  CoupledPair id = couple(spec, {InfoTransform::identity(), InfoTransform::identity()});
  CoupledPair up = couple(spec, {shift(R(1, 4)), shift(R(1, 4))});
};

}  // namespace

TEST_SUITE("bic_reduction") {
  TEST_CASE("serial posted prices") {
    Fixture f;
    CHECK(f.m.profiles() == 16);
    CHECK(verify_bic(f.m).pass());
    // Oracle by hand: bidder 0 buys every item worth 2 (prob 3/4 of at least one),
    // bidder 1 buys what is left.
    CHECK(f.m.revenue() == R(9, 4));
    CHECK(f.m.decode(f.m.index({3, 2})) == std::vector<std::size_t>{3, 2});
  }

  TEST_CASE("discounting") {
    Fixture f;
    CHECK(f.m.discounted(0).revenue() == f.m.revenue());
    const DirectMechanism half = discount_mechanism(f.m, R(1, 2));
    CHECK(half.revenue() == f.m.revenue() / 2);
    CHECK(half.at(5).payments[0] == f.m.at(5).payments[0] / 2);
    CHECK(half.at(5).lottery[0].bundles == f.m.at(5).lottery[0].bundles);
  }

  TEST_CASE("grand bundle to a random bidder") {
    Fixture f;
    const DirectMechanism g = grand_bundle_random_bidder({f.ts, f.ts}, 3);
    CHECK(verify_bic(g).pass());
    // Each bidder pays 3/2 when its bundle value reaches 3 (prob 3/4).
    CHECK(g.revenue() == 2 * R(3, 4) * R(3, 2));
  }

  TEST_CASE("bic violations are found") {
    Fixture f;
    std::vector<ProfileOutcome> table;
    for (std::size_t k = 0; k < f.m.profiles(); ++k) {
      ProfileOutcome po = f.m.at(k);
      // Charge truthful high types more.
      const auto types = f.m.decode(k);
      if (types[0] == 3) po.payments[0] += 1;
      table.push_back(po);
    }
    const BicReport r = verify_bic(DirectMechanism({f.ts, f.ts}, table));
    CHECK_FALSE(r.bic);
    CHECK_THROWS_AS(DirectMechanism({f.ts, f.ts}, {}), ParameterError);
  }

  TEST_CASE("edge weights") {
    Fixture f;
    const DirectMechanism me = f.m.discounted(R(1, 2));
    for (std::size_t s = 0; s < f.ts.size(); ++s) {
      CHECK(edge_weight(f.ts[s].valuation, s, 0, me) == me.interim_utility(0, f.ts[s].valuation, s));
      CHECK(edge_weight(f.ts[s].valuation, s, 0, f.m.discounted(0)) ==
            f.m.interim_utility(0, f.ts[s].valuation, s));
    }
    // Free mechanism: weight is the interim value.
    const DirectMechanism g = grand_bundle_random_bidder({f.ts, f.ts}, 0);
    CHECK(edge_weight(f.ts[3].valuation, 3, 0, g) == R(1, 2) * 4);
  }

  TEST_CASE("welfare of the value increment") {
    Fixture f;
    CHECK(val_delta({f.id, f.id}) == 0);
    const CoupledPair one = couple(f.spec, {shift(1), shift(1)});
    CHECK(val_delta({one}) == 2);
    CHECK(val_delta({f.up, f.up}) == R(1, 2));
  }

  TEST_CASE("reduction bound on the fixture") {
    Fixture f;
    ReductionConfig c;
    c.r = 8;
    c.trials = 2000;
    c.seed = 17;
    const RevenueEstimate e = run_reduction(f.m, {f.id, f.id}, c);
    CHECK(e.rev_m == R(9, 4));
    CHECK(e.bound == R(9, 8));
    CHECK(e.pass());
    const RevenueEstimate again = run_reduction(f.m, {f.id, f.id}, c);
    CHECK(e.mean == again.mean);
    CHECK(e.stderr_ == again.stderr_);
    const RevenueEstimate s = run_reduction(f.m, {f.up, f.up}, c);
    CHECK(s.bound == R(5, 8));
    CHECK(s.pass());
  }

  TEST_CASE("single replica") {
    Fixture f;
    ReductionConfig c;
    c.r = 1;
    c.trials = 500;
    c.seed = 1;
    const RevenueEstimate e = run_reduction(f.m, {f.id, f.id}, c);
    CHECK(e.matched_rate > 0);
    CHECK(surrogate_marginal_check(f.m, {f.id, f.id}, c, 0).pass());
  }

  TEST_CASE("preconditions") {
    Fixture f;
    std::vector<ProfileOutcome> table;
    for (std::size_t k = 0; k < f.m.profiles(); ++k) {
      ProfileOutcome po = f.m.at(k);
      po.payments[0] += 10;
      table.push_back(po);
    }
    const DirectMechanism bad({f.ts, f.ts}, table);
    ReductionConfig c;
    c.trials = 10;
    CHECK_THROWS_AS(run_reduction(bad, {f.id, f.id}, c), PreconditionError);
    c.r = 0;
    CHECK_THROWS_AS(run_reduction(f.m, {f.id, f.id}, c), ParameterError);
  }

  TEST_CASE("surrogate marginal and empirical bic") {
    Fixture f;
    ReductionConfig c;
    c.r = 8;
    c.trials = 3000;
    c.seed = 23;
    const MarginalCheck mc = surrogate_marginal_check(f.m, {f.up, f.up}, c, 1);
    CHECK(mc.pass());
    CHECK(verify_empirical_bic(f.m, {f.up, f.up}, c, 0).pass());
  }

  TEST_CASE("corrupted weights break incentives") {
    Fixture f;
    ReductionConfig c;
    c.r = 8;
    c.trials = 3000;
    c.seed = 23;
    c.corruption = WeightCorruption::kIgnorePayments;
    CHECK_FALSE(verify_empirical_bic(f.m, {f.up, f.up}, c, 0).pass());
  }

  TEST_CASE("payment accounting on fixed pools") {
    Fixture f;
    ReductionConfig c;
    c.r = 6;
    c.seed = 3;
    const AccountingCheck a = payment_accounting_check(f.m, {f.up, f.up}, c, 0, 40);
    CHECK(a.pass);
    CHECK(a.min_slack >= 0);
  }
}

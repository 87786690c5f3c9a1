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

#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mechlab/errors.hpp"
#include "mechlab/matching.hpp"

using namespace mechlab;
using namespace mechlab::testing;

namespace {

// Oracle over all partial matchings: rows pick a column or stay out.
struct Best {
  Rational weight;
  std::vector<int> match;
};

void search(const WeightMatrix& w, std::size_t row, std::vector<int>& cur, std::vector<char>& used, const Rational& acc,
            Best& best, int skip) {
  const std::size_t r = w.size();
  if (row == r) {
    if (acc > best.weight) {
      best.weight = acc;
      best.match = cur;
    }
    return;
  }
  cur[row] = -1;
  search(w, row + 1, cur, used, acc, best, skip);
  if (static_cast<int>(row) == skip) return;
  for (std::size_t c = 0; c < r; ++c) {
    if (used[c]) continue;
    used[c] = 1;
    cur[row] = static_cast<int>(c);
    search(w, row + 1, cur, used, acc + w[row][c], best, skip);
    used[c] = 0;
  }
  cur[row] = -1;
}

Rational oracle_weight(const WeightMatrix& w, int skip = -1) {
  Best b{Rational(0), {}};
  std::vector<int> cur(w.size(), -1);
  std::vector<char> used(w.size(), 0);
  search(w, 0, cur, used, 0, b, skip);
  return b.weight;
}

WeightMatrix random_matrix(std::mt19937_64& rng, std::size_t r) {
  WeightMatrix w(r, std::vector<Rational>(r));
  for (auto& row : w) {
    for (auto& x : row) x = R(static_cast<long>(rng() % 9) - 3, 1 + static_cast<long>(rng() % 3));
  }
  return w;
}

}  // namespace

TEST_SUITE("matching") {
  TEST_CASE("all negative weights") {
    const WeightMatrix w = {{R(-1), R(-2)}, {R(-3), R(-1, 2)}};
    std::mt19937_64 rng(3);
    const MatchingResult m = vcg_matching(w, &rng);
    CHECK(m.weight == 0);
    CHECK_FALSE(m.matched(0));
    CHECK_FALSE(m.matched(1));
    std::vector<int> comp = m.completion;
    std::sort(comp.begin(), comp.end());
    CHECK(comp == std::vector<int>{0, 1});
  }

  TEST_CASE("single positive edge") {
    const MatchingResult m = vcg_matching({{R(5)}});
    CHECK(m.matched(0));
    REQUIRE(m.prices[0]);
    CHECK(*m.prices[0] == 0);
  }

  TEST_CASE("two by two tie resolved lexicographically") {
    const WeightMatrix w = {{R(3), R(1)}, {R(2), R(0)}};
    const MatchingResult m = vcg_matching(w);
    CHECK(m.weight == 3);
    CHECK(m.match == std::vector<int>{0, 1});
    REQUIRE(m.prices[0]);
    REQUIRE(m.prices[1]);
    // Without row 0 the best is 2; others then earn 0 in the chosen matching.
    CHECK(*m.prices[0] == 2);
    CHECK(*m.prices[1] == 0);
  }

  TEST_CASE("non-square input") {
    CHECK_THROWS_AS(vcg_matching({{R(1), R(2)}}), ParameterError);
  }

  TEST_CASE("agrees with enumeration") {
    std::mt19937_64 rng(2026);
    for (int k = 0; k < 300; ++k) {
      const std::size_t r = 1 + static_cast<std::size_t>(rng() % 5);
      const WeightMatrix w = random_matrix(rng, r);
      const MatchingResult m = vcg_matching(w);
      const Rational best = oracle_weight(w);
      CHECK(m.weight == best);
      Rational got = 0;
      for (std::size_t i = 0; i < r; ++i) {
        if (m.matched(i)) got += w[i][static_cast<std::size_t>(m.match[i])];
      }
      CHECK(got == best);
      for (std::size_t i = 0; i < r; ++i) {
        if (!m.matched(i)) continue;
        const Rational& wi = w[i][static_cast<std::size_t>(m.match[i])];
        REQUIRE(m.prices[i]);
        CHECK(*m.prices[i] == oracle_weight(w, static_cast<int>(i)) - (best - wi));
        CHECK(*m.prices[i] >= 0);
        CHECK(wi - *m.prices[i] >= 0);
      }
    }
  }

  TEST_CASE("library brute force matches the fast path") {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 100; ++k) {
      const WeightMatrix w = random_matrix(rng, 1 + static_cast<std::size_t>(rng() % 4));
      const MatchingResult a = vcg_matching(w);
      const MatchingResult b = brute_force_matching(w);
      CHECK(a.match == b.match);
      CHECK(a.prices == b.prices);
      CHECK(brute_force_max_weight(w) == a.weight);
    }
  }

  TEST_CASE("completion is a permutation and reproducible") {
    std::mt19937_64 gen(5);
    const WeightMatrix w = random_matrix(gen, 6);
    std::mt19937_64 r1(8), r2(8);
    const MatchingResult a = vcg_matching(w, &r1);
    const MatchingResult b = vcg_matching(w, &r2);
    CHECK(a.completion == b.completion);
    std::vector<int> c = a.completion;
    std::sort(c.begin(), c.end());
    std::vector<int> all(6);
    std::iota(all.begin(), all.end(), 0);
    CHECK(c == all);
    for (std::size_t i = 0; i < 6; ++i) {
      if (a.matched(i)) CHECK(a.completion[i] == a.match[i]);
    }
  }

  TEST_CASE("integer path equals rational path") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 50; ++k) {
      const std::size_t r = 1 + static_cast<std::size_t>(rng() % 6);
      std::vector<std::vector<std::int64_t>> wi(r, std::vector<std::int64_t>(r));
      WeightMatrix wr(r, std::vector<Rational>(r));
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
          wi[i][j] = static_cast<std::int64_t>(rng() % 11) - 4;
          wr[i][j] = static_cast<long>(wi[i][j]);
        }
      }
      const IntMatchingResult a = vcg_matching_int(wi);
      const MatchingResult b = vcg_matching(wr);
      CHECK(a.match == b.match);
      CHECK(Rational(static_cast<long>(a.weight)) == b.weight);
      for (std::size_t i = 0; i < r; ++i) {
        if (b.prices[i]) CHECK(Rational(static_cast<long>(a.prices[i])) == *b.prices[i]);
      }
    }
  }
}

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

#include "mechlab/matching.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "mechlab/errors.hpp"

namespace mechlab {

namespace {

template <typename T>
struct Assignment {
  std::vector<int> col_of_row;
  std::vector<T> u;
  std::vector<T> v;
};

// Shortest augmenting path Hungarian state, 1-based as in the classic layout.
template <typename T>
struct Hungarian {
  std::size_t n = 0, m = 0;
  T inf;
  std::vector<T> u, v, minv;
  std::vector<std::size_t> p, way;
  std::vector<char> used;

  Hungarian(std::size_t rows, std::size_t cols, const T& big)
      : n(rows), m(cols), inf(big), u(rows + 1, T(0)), v(cols + 1, T(0)), minv(cols + 1), p(cols + 1, 0),
        way(cols + 1, 0), used(cols + 1) {}

  // Inserts row i (1-based) into the current optimal partial assignment.
  template <typename Cost>
  void phase(std::size_t i, Cost&& cost) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      T delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        T cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> col_of_row() const {
    std::vector<int> out(n, -1);
    for (std::size_t j = 1; j <= m; ++j) {
      if (p[j] != 0) out[p[j] - 1] = static_cast<int>(j - 1);
    }
    return out;
  }
};

// Minimizes cost; rows <= cols.
template <typename T>
Assignment<T> hungarian(const std::vector<std::vector<T>>& a, const T& inf) {
  const std::size_t n = a.size();
  Hungarian<T> h(n, n == 0 ? 0 : a[0].size(), inf);
  for (std::size_t i = 1; i <= n; ++i) h.phase(i, [&](std::size_t r, std::size_t c) -> const T& { return a[r][c]; });
  Assignment<T> out;
  out.col_of_row = h.col_of_row();
  out.u.assign(h.u.begin() + 1, h.u.end());
  out.v.assign(h.v.begin() + 1, h.v.end());
  return out;
}

// Optimum cost of the square problem with row i zeroed, warm-started from the
// optimal duals of the full problem. Zero rows stand in for a removed row since
// every weight is nonnegative.
template <typename T>
T zero_row_cost(const std::vector<std::vector<T>>& a, const Assignment<T>& asg, std::size_t i, const T& inf) {
  const std::size_t r = a.size();
  Hungarian<T> h(r, r, inf);
  for (std::size_t k = 0; k < r; ++k) {
    h.u[k + 1] = asg.u[k];
    h.v[k + 1] = asg.v[k];
    if (k != i) h.p[static_cast<std::size_t>(asg.col_of_row[k]) + 1] = k + 1;
  }
  const T zero(0);
  T lowest = zero - h.v[1];
  for (std::size_t j = 2; j <= r; ++j) lowest = std::min<T>(lowest, zero - h.v[j]);
  h.u[i + 1] = lowest;
  h.phase(i + 1, [&](std::size_t row, std::size_t c) -> const T& { return row == i ? zero : a[row][c]; });
  T total(0);
  for (std::size_t j = 1; j <= r; ++j) {
    if (h.p[j] - 1 != i) total += a[h.p[j] - 1][j - 1];
  }
  return total;
}

// Rewrites a square optimal assignment into the lexicographically smallest one
// using only edges that are tight for the optimal duals.
template <typename T>
void canonicalize(const std::vector<std::vector<T>>& a, Assignment<T>& asg) {
  const std::size_t r = a.size();
  auto tight = [&](std::size_t i, std::size_t j) { return asg.u[i] + asg.v[j] == a[i][j]; };
  std::vector<int>& col = asg.col_of_row;
  std::vector<int> owner(r);
  for (std::size_t i = 0; i < r; ++i) owner[static_cast<std::size_t>(col[i])] = static_cast<int>(i);
  std::vector<int> next(r);
  std::vector<char> seen(r);
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t target = static_cast<std::size_t>(col[i]);
    // Rows k > i that can hand their column on along tight edges down to `target`.
    std::fill(seen.begin(), seen.end(), 0);
    queue.assign(1, target);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t c = queue[qi];
      for (std::size_t k = i + 1; k < r; ++k) {
        if (seen[k] || !tight(k, c)) continue;
        seen[k] = 1;
        next[k] = static_cast<int>(c);
        queue.push_back(static_cast<std::size_t>(col[k]));
      }
    }
    for (std::size_t j = 0; j < target; ++j) {
      const std::size_t k = static_cast<std::size_t>(owner[j]);
      if (k <= i || !seen[k] || !tight(i, j)) continue;
      col[i] = static_cast<int>(j);
      owner[j] = static_cast<int>(i);
      std::size_t mover = k;
      while (true) {
        const std::size_t c = static_cast<std::size_t>(next[mover]);
        const std::size_t displaced = static_cast<std::size_t>(owner[c]);
        col[mover] = static_cast<int>(c);
        owner[c] = static_cast<int>(mover);
        if (c == target) break;
        mover = displaced;
      }
      break;
    }
  }
}

template <typename T>
T assignment_value(const std::vector<std::vector<T>>& a, const std::vector<int>& col) {
  T total(0);
  for (std::size_t i = 0; i < a.size(); ++i) total += a[i][static_cast<std::size_t>(col[i])];
  return total;
}

// Max-weight solve on nonnegative weights `wp`; `neg` marks edges that were negative.
template <typename T>
void solve(const std::vector<std::vector<T>>& wp, const std::vector<std::vector<char>>& neg, const T& inf,
           const std::vector<bool>* price_rows, MatchingResult& out, std::vector<T>& prices_raw,
           std::vector<char>& has_price, T& weight_raw) {
  const std::size_t r = wp.size();
  std::vector<std::vector<T>> cost(r, std::vector<T>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) cost[i][j] = -wp[i][j];
  }
  Assignment<T> asg = hungarian(cost, inf);
  canonicalize(cost, asg);
  weight_raw = -assignment_value(cost, asg.col_of_row);
  out.match.assign(r, -1);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t j = static_cast<std::size_t>(asg.col_of_row[i]);
    if (!neg[i][j]) out.match[i] = static_cast<int>(j);
  }
  prices_raw.assign(r, T(0));
  has_price.assign(r, 0);
  std::map<std::vector<T>, T> memo;
  for (std::size_t i = 0; i < r; ++i) {
    if (out.match[i] < 0 || (price_rows && !(*price_rows)[i])) continue;
    auto it = memo.find(wp[i]);
    if (it == memo.end()) it = memo.emplace(wp[i], -zero_row_cost(cost, asg, i, inf)).first;
    prices_raw[i] = it->second - (weight_raw - wp[i][static_cast<std::size_t>(out.match[i])]);
    has_price[i] = 1;
  }
}

}  // namespace

namespace {

std::vector<int> complete(const std::vector<int>& match, std::mt19937_64* rng) {
  std::vector<int> out = match;
  if (!rng) return out;
  const std::size_t r = match.size();
  std::vector<int> free_rows, free_cols;
  std::vector<char> taken(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (match[i] >= 0) {
      taken[static_cast<std::size_t>(match[i])] = 1;
    } else {
      free_rows.push_back(static_cast<int>(i));
    }
  }
  for (std::size_t j = 0; j < r; ++j) {
    if (!taken[j]) free_cols.push_back(static_cast<int>(j));
  }
  for (std::size_t k = free_cols.size(); k > 1; --k) {
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::swap(free_cols[k - 1], free_cols[pick(*rng)]);
  }
  for (std::size_t k = 0; k < free_rows.size(); ++k) out[static_cast<std::size_t>(free_rows[k])] = free_cols[k];
  return out;
}

void check_square(std::size_t r, std::size_t cols, const std::vector<bool>* price_rows) {
  if (cols != r) throw ParameterError("matching weights must form a square matrix");
  if (price_rows && price_rows->size() != r) throw ParameterError("price row mask has wrong length");
}

}  // namespace

IntMatchingResult vcg_matching_int(const std::vector<std::vector<std::int64_t>>& w, std::mt19937_64* rng,
                                   const std::vector<bool>* price_rows) {
  const std::size_t r = w.size();
  std::int64_t top = 0;
  std::vector<std::vector<char>> neg(r, std::vector<char>(r));
  std::vector<std::vector<std::int64_t>> wp(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    check_square(r, w[i].size(), price_rows);
    for (std::size_t j = 0; j < r; ++j) {
      neg[i][j] = w[i][j] < 0;
      wp[i][j] = std::max<std::int64_t>(w[i][j], 0);
      top = std::max(top, wp[i][j]);
    }
  }
  IntMatchingResult out;
  const std::int64_t inf = (top + 1) * static_cast<std::int64_t>(4 * (r + 1));
  MatchingResult shape;
  solve(wp, neg, inf, price_rows, shape, out.prices, out.has_price, out.weight);
  out.match = std::move(shape.match);
  out.completion = complete(out.match, rng);
  return out;
}

MatchingResult vcg_matching(const WeightMatrix& w, std::mt19937_64* rng, const std::vector<bool>* price_rows) {
  const std::size_t r = w.size();
  for (const auto& row : w) check_square(r, row.size(), price_rows);
  MatchingResult out;
  out.prices.assign(r, std::nullopt);
  out.weight = 0;
  if (r == 0) return out;

  mpz_class den = 1;
  Rational top = 0;
  for (const auto& row : w) {
    for (const auto& x : row) {
      if (x > 0) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
        top = rmax(top, x);
      }
    }
  }
  const Rational scaled_top = top * den;
  if (scaled_top * static_cast<long>(4 * (r + 1)) < Rational(mpz_class(1) << 60)) {
    std::vector<std::vector<std::int64_t>> wi(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        // Negative entries only need their sign.
        if (w[i][j] > 0) {
          mpz_class x = w[i][j].get_num() * (den / w[i][j].get_den());
          wi[i][j] = x.get_si();
        } else if (w[i][j] < 0) {
          wi[i][j] = -1;
        }
      }
    }
    IntMatchingResult res = vcg_matching_int(wi, rng, price_rows);
    out.match = std::move(res.match);
    out.completion = std::move(res.completion);
    out.weight = Rational(mpz_class(static_cast<long>(res.weight)), den);
    out.weight.canonicalize();
    for (std::size_t i = 0; i < r; ++i) {
      if (!res.has_price[i]) continue;
      Rational p(mpz_class(static_cast<long>(res.prices[i])), den);
      p.canonicalize();
      out.prices[i] = p;
    }
    return out;
  }

  std::vector<std::vector<char>> neg(r, std::vector<char>(r));
  std::vector<std::vector<Rational>> wp(r, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      neg[i][j] = w[i][j] < 0;
      wp[i][j] = rmax(w[i][j], 0);
    }
  }
  const Rational inf = (top + 1) * static_cast<long>(4 * (r + 1));
  std::vector<Rational> prices;
  std::vector<char> has_price;
  solve(wp, neg, inf, price_rows, out, prices, has_price, out.weight);
  for (std::size_t i = 0; i < r; ++i) {
    if (has_price[i]) out.prices[i] = prices[i];
  }
  out.completion = complete(out.match, rng);
  return out;
}

namespace {

void best_partial(const WeightMatrix& w, std::size_t row, std::vector<char>& used, const Rational& acc,
                  std::size_t skip, Rational& best) {
  if (row == w.size()) {
    if (acc > best) best = acc;
    return;
  }
  if (row == skip) {
    best_partial(w, row + 1, used, acc, skip, best);
    return;
  }
  best_partial(w, row + 1, used, acc, skip, best);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (used[j]) continue;
    used[j] = 1;
    best_partial(w, row + 1, used, acc + w[row][j], skip, best);
    used[j] = 0;
  }
}

Rational max_partial(const WeightMatrix& w, std::size_t skip) {
  std::vector<char> used(w.size(), 0);
  Rational best = 0;
  best_partial(w, 0, used, Rational(0), skip, best);
  return best;
}

}  // namespace

Rational brute_force_max_weight(const WeightMatrix& w) { return max_partial(w, w.size()); }

MatchingResult brute_force_matching(const WeightMatrix& w) {
  const std::size_t r = w.size();
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm = perm;
  Rational best = -1;
  do {
    Rational total = 0;
    for (std::size_t i = 0; i < r; ++i) total += rmax(w[i][static_cast<std::size_t>(perm[i])], 0);
    if (total > best) {
      best = total;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  MatchingResult out;
  out.weight = r == 0 ? Rational(0) : best;
  out.match.assign(r, -1);
  out.prices.assign(r, std::nullopt);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t j = static_cast<std::size_t>(best_perm[i]);
    if (w[i][j] >= 0) out.match[i] = static_cast<int>(j);
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (out.match[i] < 0) continue;
    const Rational without = max_partial(w, i);
    out.prices[i] = without - (out.weight - w[i][static_cast<std::size_t>(out.match[i])]);
  }
  out.completion = out.match;
  return out;
}

}  // namespace mechlab

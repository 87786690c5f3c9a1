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

#include "mechlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "mechlab/errors.hpp"

namespace mechlab::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kDropTol = 1e-13;

// Dense floating-point tableau simplex. Only used to find a candidate basis;
// every number it produces is re-derived exactly afterwards.
std::vector<std::size_t> float_basis(const LinearProgram& lp, std::size_t max_pivots, std::size_t& pivots) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.rows.size();
  const std::size_t width = n + m + 1;
  std::vector<double> t(m * width, 0.0);
  std::vector<double> cost(n + m, 0.0);
  std::vector<std::size_t> basis(m);
  double scale = 1.0;
  for (const auto& row : lp.rows) scale = std::max(scale, std::abs(row.rhs.get_d()));
  for (std::size_t i = 0; i < m; ++i) {
    double* r = &t[i * width];
    for (const auto& [j, a] : lp.rows[i].terms) r[j] += a.get_d();
    r[n + i] = 1.0;
    // Deterministic rhs perturbation breaks the heavy degeneracy of IC rows.
    const double jitter = 1e-7 * scale * (1.0 + static_cast<double>((i * 7919) % 1009) / 1009.0);
    r[width - 1] = lp.rows[i].rhs.get_d() + jitter;
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j].get_d();

  std::vector<std::size_t> nz;
  pivots = 0;
  while (pivots < max_pivots) {
    std::size_t enter = n + m;
    double best = kCostTol;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (cost[j] > best) {
        best = cost[j];
        enter = j;
      }
    }
    if (enter == n + m) break;
    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = t[i * width + enter];
      if (a <= kPivotTol) continue;
      const double ratio = std::max(0.0, t[i * width + width - 1]) / a;
      if (leave == m || ratio < best_ratio - 1e-12 * (1.0 + best_ratio) ||
          (ratio <= best_ratio + 1e-12 * (1.0 + best_ratio) && basis[i] < basis[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == m) break;  // unbounded direction; the exact stage reports it

    double* prow = &t[leave * width];
    const double inv = 1.0 / prow[enter];
    nz.clear();
    for (std::size_t j = 0; j < width; ++j) {
      if (prow[j] != 0.0) {
        prow[j] *= inv;
        if (std::abs(prow[j]) < kDropTol) {
          prow[j] = 0.0;
        } else {
          nz.push_back(j);
        }
      }
    }
    prow[enter] = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      double* r = &t[i * width];
      const double f = r[enter];
      if (f == 0.0) continue;
      for (std::size_t j : nz) {
        double v = r[j] - f * prow[j];
        r[j] = std::abs(v) < kDropTol ? 0.0 : v;
      }
      r[enter] = 0.0;
    }
    const double fc = cost[enter];
    for (std::size_t j : nz) {
      if (j < n + m) cost[j] -= fc * prow[j];
    }
    cost[enter] = 0.0;
    basis[leave] = enter;
    ++pivots;
  }
  return basis;
}

// Dense exact LU of a square matrix, PA = LU.
class ExactLu {
 public:
  ExactLu(std::vector<Rational> a, std::size_t k) : k_(k), a_(std::move(a)), perm_(k) {
    for (std::size_t i = 0; i < k_; ++i) perm_[i] = i;
    std::vector<std::size_t> row_nnz(k_, 0);
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) row_nnz[i] += sgn(at(i, j)) != 0;
    }
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < k_; ++c) {
      std::size_t pivot = k_;
      for (std::size_t r = c; r < k_; ++r) {
        if (sgn(at(r, c)) != 0 && (pivot == k_ || row_nnz[r] < row_nnz[pivot])) pivot = r;
      }
      if (pivot == k_) {
        singular_ = true;
        return;
      }
      if (pivot != c) {
        for (std::size_t j = 0; j < k_; ++j) std::swap(at(pivot, j), at(c, j));
        std::swap(perm_[pivot], perm_[c]);
        std::swap(row_nnz[pivot], row_nnz[c]);
      }
      cols.clear();
      for (std::size_t j = c + 1; j < k_; ++j) {
        if (sgn(at(c, j)) != 0) cols.push_back(j);
      }
      Rational f;
      for (std::size_t r = c + 1; r < k_; ++r) {
        if (sgn(at(r, c)) == 0) continue;
        f = at(r, c) / at(c, c);
        at(r, c) = f;
        for (std::size_t j : cols) {
          const bool was_zero = sgn(at(r, j)) == 0;
          at(r, j) -= f * at(c, j);
          const bool now_zero = sgn(at(r, j)) == 0;
          if (was_zero && !now_zero) ++row_nnz[r];
          if (!was_zero && now_zero) --row_nnz[r];
        }
      }
    }
  }

  bool singular() const noexcept { return singular_; }

  std::vector<Rational> solve(const std::vector<Rational>& rhs) const {
    std::vector<Rational> z(k_);
    for (std::size_t i = 0; i < k_; ++i) z[i] = rhs[perm_[i]];
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (sgn(at(i, j)) != 0 && sgn(z[j]) != 0) z[i] -= at(i, j) * z[j];
      }
    }
    for (std::size_t ii = k_; ii-- > 0;) {
      for (std::size_t j = ii + 1; j < k_; ++j) {
        if (sgn(at(ii, j)) != 0 && sgn(z[j]) != 0) z[ii] -= at(ii, j) * z[j];
      }
      z[ii] /= at(ii, ii);
    }
    return z;
  }

  std::vector<Rational> solve_transpose(const std::vector<Rational>& rhs) const {
    std::vector<Rational> w(rhs);
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (sgn(at(j, i)) != 0 && sgn(w[j]) != 0) w[i] -= at(j, i) * w[j];
      }
      w[i] /= at(i, i);
    }
    for (std::size_t ii = k_; ii-- > 0;) {
      for (std::size_t j = ii + 1; j < k_; ++j) {
        if (sgn(at(j, ii)) != 0 && sgn(w[j]) != 0) w[ii] -= at(j, ii) * w[j];
      }
    }
    std::vector<Rational> y(k_);
    for (std::size_t i = 0; i < k_; ++i) y[perm_[i]] = w[i];
    return y;
  }

 private:
  Rational& at(std::size_t i, std::size_t j) { return a_[i * k_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * k_ + j]; }

  std::size_t k_;
  std::vector<Rational> a_;
  std::vector<std::size_t> perm_;
  bool singular_ = false;
};

// Exact revised simplex on a basis described by its structural members K and
// the rows R whose slacks are nonbasic (|K| == |R|).
class ExactSimplex {
 public:
  explicit ExactSimplex(const LinearProgram& lp) : lp_(lp), n_(lp.num_vars), m_(lp.rows.size()) {
    cols_.assign(n_, {});
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& [j, a] : lp.rows[i].terms) {
        if (sgn(a) != 0) cols_[j].push_back({i, a});
      }
    }
    for (auto& col : cols_) {
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      // Merge duplicate row entries.
      std::vector<std::pair<std::size_t, Rational>> merged;
      for (auto& e : col) {
        if (!merged.empty() && merged.back().first == e.first) {
          merged.back().second += e.second;
        } else {
          merged.push_back(e);
        }
      }
      col = std::move(merged);
    }
    row_terms_.assign(m_, {});
    for (std::size_t j = 0; j < n_; ++j) {
      for (const auto& [i, a] : cols_[j]) row_terms_[i].push_back({j, a});
    }
  }

  // Returns false when the basis is singular or primal infeasible.
  bool load(const std::vector<std::size_t>& basis) {
    in_k_.assign(n_, false);
    in_r_.assign(m_, true);
    for (std::size_t v : basis) {
      if (v < n_) {
        in_k_[v] = true;
      } else {
        in_r_[v - n_] = false;
      }
    }
    rebuild_lists();
    if (k_.size() != r_.size()) return false;
    if (!factor()) return false;
    compute_primal();
    for (const auto& x : xk_) {
      if (sgn(x) < 0) return false;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (!in_r_[i] && sgn(slack_[i]) < 0) return false;
    }
    return true;
  }

  void load_slack_basis() {
    in_k_.assign(n_, false);
    in_r_.assign(m_, false);
    rebuild_lists();
    factor();
    compute_primal();
  }

  // Runs to optimality. Bland's rule throughout, so termination is guaranteed.
  Solution run(std::size_t max_pivots) {
    std::size_t pivots = 0;
    while (true) {
      compute_duals();
      // Entering variable: smallest index with positive reduced cost.
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < n_ && !enter; ++j) {
        if (in_k_[j]) continue;
        Rational d = lp_.objective[j];
        for (const auto& [i, a] : cols_[j]) {
          if (in_r_[i] && sgn(y_[i]) != 0) d -= y_[i] * a;
        }
        if (sgn(d) > 0) enter = j;
      }
      for (std::size_t i = 0; i < m_ && !enter; ++i) {
        if (in_r_[i] && sgn(y_[i]) < 0) enter = n_ + i;
      }
      if (!enter) break;
      if (pivots >= max_pivots) throw InternalError("exact simplex exceeded its pivot budget");

      // Direction z = B^{-1} a_enter restricted to the basic variables.
      std::vector<Rational> rhs(k_.size());
      for (std::size_t p = 0; p < r_.size(); ++p) rhs[p] = column_entry(*enter, r_[p]);
      std::vector<Rational> zk = k_.empty() ? std::vector<Rational>{} : lu_->solve(rhs);

      std::optional<std::size_t> leave_var;
      Rational best;
      auto consider = [&](std::size_t var, const Rational& value, const Rational& z) {
        if (sgn(z) <= 0) return;
        Rational ratio = value / z;
        if (!leave_var || ratio < best || (ratio == best && var < *leave_var)) {
          best = std::move(ratio);
          leave_var = var;
        }
      };
      for (std::size_t p = 0; p < k_.size(); ++p) consider(k_[p], xk_[p], zk[p]);
      for (std::size_t i = 0; i < m_; ++i) {
        if (in_r_[i]) continue;
        Rational z = column_entry(*enter, i);
        for (std::size_t p = 0; p < k_.size(); ++p) {
          const Rational& a = dense_entry(i, k_[p]);
          if (sgn(a) != 0 && sgn(zk[p]) != 0) z -= a * zk[p];
        }
        consider(n_ + i, slack_[i], z);
      }
      if (!leave_var) throw InternalError("LP is unbounded");

      if (*enter < n_) {
        in_k_[*enter] = true;
      } else {
        in_r_[*enter - n_] = false;
      }
      if (*leave_var < n_) {
        in_k_[*leave_var] = false;
      } else {
        in_r_[*leave_var - n_] = true;
      }
      rebuild_lists();
      if (!factor()) throw InternalError("exact simplex produced a singular basis");
      compute_primal();
      ++pivots;
    }
    Solution sol;
    sol.exact_pivots = pivots;
    sol.x.assign(n_, Rational(0));
    for (std::size_t p = 0; p < k_.size(); ++p) sol.x[k_[p]] = xk_[p];
    sol.duals = y_;
    sol.value = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn(sol.x[j]) != 0) sol.value += lp_.objective[j] * sol.x[j];
    }
    return sol;
  }

 private:
  void rebuild_lists() {
    k_.clear();
    r_.clear();
    for (std::size_t j = 0; j < n_; ++j) {
      if (in_k_[j]) k_.push_back(j);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (in_r_[i]) r_.push_back(i);
    }
    r_pos_.assign(m_, m_);
    for (std::size_t p = 0; p < r_.size(); ++p) r_pos_[r_[p]] = p;
  }

  const Rational& dense_entry(std::size_t i, std::size_t j) const {
    static const Rational zero(0);
    const auto& col = cols_[j];
    auto it = std::lower_bound(col.begin(), col.end(), i,
                               [](const auto& e, std::size_t row) { return e.first < row; });
    return (it != col.end() && it->first == i) ? it->second : zero;
  }

  Rational column_entry(std::size_t var, std::size_t row) const {
    if (var < n_) return dense_entry(row, var);
    return var - n_ == row ? Rational(1) : Rational(0);
  }

  bool factor() {
    const std::size_t k = k_.size();
    if (k == 0) {
      lu_.reset();
      return true;
    }
    std::vector<Rational> a(k * k);
    for (std::size_t q = 0; q < k; ++q) {
      for (const auto& [i, v] : cols_[k_[q]]) {
        if (r_pos_[i] < m_) a[r_pos_[i] * k + q] = v;
      }
    }
    lu_.emplace(std::move(a), k);
    return !lu_->singular();
  }

  void compute_primal() {
    std::vector<Rational> rhs(r_.size());
    for (std::size_t p = 0; p < r_.size(); ++p) rhs[p] = lp_.rows[r_[p]].rhs;
    xk_ = k_.empty() ? std::vector<Rational>{} : lu_->solve(rhs);
    slack_.assign(m_, Rational(0));
    std::vector<Rational> x(n_);
    for (std::size_t p = 0; p < k_.size(); ++p) x[k_[p]] = xk_[p];
    for (std::size_t i = 0; i < m_; ++i) {
      if (in_r_[i]) continue;
      Rational s = lp_.rows[i].rhs;
      for (const auto& [j, a] : row_terms_[i]) {
        if (in_k_[j] && sgn(x[j]) != 0) s -= a * x[j];
      }
      slack_[i] = std::move(s);
    }
  }

  void compute_duals() {
    y_.assign(m_, Rational(0));
    if (k_.empty()) return;
    std::vector<Rational> ck(k_.size());
    for (std::size_t q = 0; q < k_.size(); ++q) ck[q] = lp_.objective[k_[q]];
    auto yr = lu_->solve_transpose(ck);
    for (std::size_t p = 0; p < r_.size(); ++p) y_[r_[p]] = yr[p];
  }

  const LinearProgram& lp_;
  std::size_t n_;
  std::size_t m_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> row_terms_;
  std::vector<bool> in_k_;
  std::vector<bool> in_r_;
  std::vector<std::size_t> k_;
  std::vector<std::size_t> r_;
  std::vector<std::size_t> r_pos_;
  std::optional<ExactLu> lu_;
  std::vector<Rational> xk_;
  std::vector<Rational> slack_;
  std::vector<Rational> y_;
};

void validate(const LinearProgram& lp) {
  if (lp.objective.size() != lp.num_vars) throw ParameterError("objective length differs from variable count");
  for (const auto& row : lp.rows) {
    if (row.rhs < 0) throw ParameterError("LP rows require a nonnegative right-hand side");
    for (const auto& [j, a] : row.terms) {
      if (j >= lp.num_vars) throw ParameterError("LP row references an unknown variable");
    }
  }
}

}  // namespace

Solution solve(const LinearProgram& lp, const Options& options) {
  validate(lp);
  ExactSimplex exact(lp);
  std::size_t float_pivots = 0;
  bool warm = false;
  if (!options.exact_only) {
    auto basis = float_basis(lp, options.max_float_pivots, float_pivots);
    warm = exact.load(basis);
  }
  if (!warm) exact.load_slack_basis();
  Solution sol = exact.run(options.max_exact_pivots);
  sol.float_pivots = float_pivots;
  sol.warm_start_certified = warm && sol.exact_pivots == 0;
  if (!certify(lp, sol)) throw InternalError("LP solution failed exact certification");
  return sol;
}

bool certify(const LinearProgram& lp, const Solution& sol) {
  if (sol.x.size() != lp.num_vars || sol.duals.size() != lp.rows.size()) return false;
  for (const auto& x : sol.x) {
    if (sgn(x) < 0) return false;
  }
  for (const auto& y : sol.duals) {
    if (sgn(y) < 0) return false;
  }
  std::vector<Rational> reduced(lp.objective);
  Rational primal = 0;
  Rational dual = 0;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    Rational lhs = 0;
    for (const auto& [j, a] : row.terms) {
      if (sgn(sol.x[j]) != 0) lhs += a * sol.x[j];
      if (sgn(sol.duals[i]) != 0) reduced[j] -= a * sol.duals[i];
    }
    if (lhs > row.rhs) return false;
    dual += row.rhs * sol.duals[i];
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (sgn(reduced[j]) > 0) return false;
    primal += lp.objective[j] * sol.x[j];
  }
  return primal == dual && primal == sol.value;
}

}  // namespace mechlab::lp

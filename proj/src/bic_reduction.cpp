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

#include "mechlab/bic_reduction.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <optional>

#include "mechlab/errors.hpp"
#include "mechlab/matching.hpp"
#include "mechlab/rng.hpp"

namespace mechlab {

DirectMechanism::DirectMechanism(std::vector<TypeSpace> bidders, std::vector<ProfileOutcome> table)
    : spaces_(std::move(bidders)), table_(std::move(table)) {
  if (spaces_.empty()) throw ParameterError("mechanism needs at least one bidder");
  std::size_t expected = 1;
  for (const auto& s : spaces_) {
    if (s.n() != spaces_.front().n()) throw ParameterError("bidders disagree on the item count");
    expected *= s.size();
  }
  if (table_.size() != expected) throw ParameterError("mechanism table does not cover every profile");
  const std::size_t m = spaces_.size();
  for (const auto& po : table_) {
    if (po.payments.size() != m) throw ParameterError("payment vector has wrong length");
    Rational total = 0;
    for (const auto& o : po.lottery) {
      if (o.prob < 0 || o.bundles.size() != m) throw ParameterError("malformed outcome");
      Subset used = 0;
      for (Subset b : o.bundles) {
        if (used & b) throw ParameterError("outcome allocates an item twice");
        used |= b;
      }
      total += o.prob;
    }
    if (total > 1) throw ParameterError("outcome probabilities exceed one");
  }
}

std::size_t DirectMechanism::index(const std::vector<std::size_t>& types) const {
  std::size_t idx = 0, stride = 1;
  for (std::size_t j = 0; j < spaces_.size(); ++j) {
    idx += types[j] * stride;
    stride *= spaces_[j].size();
  }
  return idx;
}

std::vector<std::size_t> DirectMechanism::decode(std::size_t profile) const {
  std::vector<std::size_t> types(spaces_.size());
  for (std::size_t j = 0; j < spaces_.size(); ++j) {
    types[j] = profile % spaces_[j].size();
    profile /= spaces_[j].size();
  }
  return types;
}

Rational DirectMechanism::profile_prob(std::size_t profile) const {
  const auto types = decode(profile);
  Rational p = 1;
  for (std::size_t j = 0; j < types.size(); ++j) p *= spaces_[j][types[j]].prob;
  return p;
}

Rational DirectMechanism::revenue() const {
  Rational total = 0;
  for (std::size_t k = 0; k < table_.size(); ++k) {
    Rational pay = 0;
    for (const auto& p : table_[k].payments) pay += p;
    total += profile_prob(k) * pay;
  }
  return total;
}

std::map<Subset, Rational> DirectMechanism::interim_allocation(std::size_t j, std::size_t t) const {
  std::map<Subset, Rational> out;
  for (std::size_t k = 0; k < table_.size(); ++k) {
    const auto types = decode(k);
    if (types[j] != t) continue;
    const Rational others = profile_prob(k) / spaces_[j][t].prob;
    for (const auto& o : table_[k].lottery) out[o.bundles[j]] += others * o.prob;
  }
  return out;
}

Rational DirectMechanism::interim_payment(std::size_t j, std::size_t t) const {
  Rational total = 0;
  for (std::size_t k = 0; k < table_.size(); ++k) {
    const auto types = decode(k);
    if (types[j] == t) total += profile_prob(k) / spaces_[j][t].prob * table_[k].payments[j];
  }
  return total;
}

Rational DirectMechanism::interim_utility(std::size_t j, const Valuation& v, std::size_t t) const {
  Rational u = -interim_payment(j, t);
  for (const auto& [bundle, prob] : interim_allocation(j, t)) u += prob * v(bundle);
  return u;
}

DirectMechanism DirectMechanism::discounted(const Rational& epsilon) const {
  if (epsilon < 0 || epsilon >= 1) throw ParameterError("epsilon must lie in [0,1)");
  std::vector<ProfileOutcome> table = table_;
  for (auto& po : table) {
    for (auto& p : po.payments) p *= 1 - epsilon;
  }
  return DirectMechanism(spaces_, std::move(table));
}

DirectMechanism discount_mechanism(const DirectMechanism& m, const Rational& epsilon) { return m.discounted(epsilon); }

BicReport verify_bic(const DirectMechanism& m) {
  BicReport r;
  for (std::size_t j = 0; j < m.bidders(); ++j) {
    const TypeSpace& ts = m.space(j);
    std::vector<std::map<Subset, Rational>> alloc;
    std::vector<Rational> pay;
    for (std::size_t t = 0; t < ts.size(); ++t) {
      alloc.push_back(m.interim_allocation(j, t));
      pay.push_back(m.interim_payment(j, t));
    }
    auto utility = [&](std::size_t truth, std::size_t report) {
      Rational u = -pay[report];
      for (const auto& [b, p] : alloc[report]) u += p * ts[truth].valuation(b);
      return u;
    };
    for (std::size_t t = 0; t < ts.size(); ++t) {
      const Rational honest = utility(t, t);
      if (honest < 0) {
        r.ir = false;
        r.violations.push_back({j, t, t, -honest});
      }
      for (std::size_t s = 0; s < ts.size(); ++s) {
        const Rational gain = utility(t, s) - honest;
        if (gain > 0) {
          r.bic = false;
          r.violations.push_back({j, t, s, gain});
        }
      }
    }
  }
  return r;
}

namespace {

void check_bidders(const std::vector<TypeSpace>& bidders) {
  if (bidders.empty()) throw ParameterError("mechanism needs at least one bidder");
}

std::size_t profile_count(const std::vector<TypeSpace>& bidders) {
  std::size_t count = 1;
  for (const auto& b : bidders) count *= b.size();
  return count;
}

}  // namespace

DirectMechanism serial_posted_price(std::vector<TypeSpace> bidders, const std::vector<Rational>& prices,
                                    const Caps& caps) {
  check_bidders(bidders);
  const std::size_t n = bidders.front().n();
  if (n > caps.demand_items) throw ResourceError("demand enumeration", n, caps.demand_items);
  if (prices.size() != n) throw ParameterError("price vector has wrong length");
  const std::size_t m = bidders.size();
  const std::size_t cells = std::size_t{1} << n;
  std::vector<Rational> cost(cells);
  for (Subset s = 1; s < cells; ++s) cost[s] = cost[s & (s - 1)] + prices[std::countr_zero(s)];

  const DirectMechanism shape(bidders, std::vector<ProfileOutcome>(profile_count(bidders),
                                                                   ProfileOutcome{{}, std::vector<Rational>(m)}));
  std::vector<ProfileOutcome> table;
  for (std::size_t k = 0; k < shape.profiles(); ++k) {
    const auto types = shape.decode(k);
    Subset left = full_set(n);
    Outcome o{1, std::vector<Subset>(m, 0)};
    std::vector<Rational> pay(m);
    for (std::size_t j = 0; j < m; ++j) {
      const Valuation& v = bidders[j][types[j]].valuation;
      Subset best = 0;
      Rational best_u = 0;
      for (Subset s = left; s != 0; s = (s - 1) & left) {
        Rational u = v(s) - cost[s];
        if (u > best_u || (u == best_u && (cost[s] > cost[best] || (cost[s] == cost[best] && lex_less(s, best))))) {
          best = s;
          best_u = std::move(u);
        }
      }
      o.bundles[j] = best;
      pay[j] = cost[best];
      left &= ~best;
    }
    table.push_back({{o}, pay});
  }
  return DirectMechanism(std::move(bidders), std::move(table));
}

DirectMechanism grand_bundle_random_bidder(std::vector<TypeSpace> bidders, const Rational& reserve) {
  check_bidders(bidders);
  const std::size_t m = bidders.size();
  const Subset all = full_set(bidders.front().n());
  const DirectMechanism shape(bidders, std::vector<ProfileOutcome>(profile_count(bidders),
                                                                   ProfileOutcome{{}, std::vector<Rational>(m)}));
  const Rational share = ratio(1, static_cast<long>(m));
  std::vector<ProfileOutcome> table;
  for (std::size_t k = 0; k < shape.profiles(); ++k) {
    const auto types = shape.decode(k);
    ProfileOutcome po{{}, std::vector<Rational>(m)};
    for (std::size_t j = 0; j < m; ++j) {
      if (bidders[j][types[j]].valuation(all) < reserve) continue;
      Outcome o{share, std::vector<Subset>(m, 0)};
      o.bundles[j] = all;
      po.lottery.push_back(std::move(o));
      po.payments[j] = share * reserve;
    }
    table.push_back(std::move(po));
  }
  return DirectMechanism(std::move(bidders), std::move(table));
}

Rational edge_weight(const Valuation& replica, std::size_t s, std::size_t j, const DirectMechanism& m_eps) {
  return m_eps.interim_utility(j, replica, s);
}

Rational val_delta(const std::vector<CoupledPair>& pairs, const Caps& caps) {
  if (pairs.empty()) return 0;
  const std::size_t m = pairs.size();
  const std::size_t n = pairs.front().base_space.n();
  std::vector<std::vector<std::pair<Rational, std::vector<Rational>>>> deltas(m);
  std::size_t profiles = 1;
  for (std::size_t j = 0; j < m; ++j) {
    const auto& base = pairs[j].base_space;
    const auto& plus = pairs[j].plus_space;
    if (base.n() != n) throw ParameterError("bidders disagree on the item count");
    for (std::size_t k = 0; k < base.size(); ++k) {
      std::vector<Rational> d(std::size_t{1} << n);
      for (Subset s = 0; s < d.size(); ++s) d[s] = plus[k].valuation(s) - base[k].valuation(s);
      deltas[j].emplace_back(base[k].prob, std::move(d));
    }
    profiles *= base.size();
  }
  std::size_t assignments = 1;
  for (std::size_t i = 0; i < n; ++i) assignments *= m + 1;
  if (profiles * assignments > caps.exhaustive_checks) {
    throw ResourceError("welfare enumeration", profiles * assignments, caps.exhaustive_checks);
  }
  Rational total = 0;
  std::vector<std::size_t> idx(m, 0);
  std::vector<Subset> bundles(m);
  for (std::size_t p = 0; p < profiles; ++p) {
    std::size_t rest = p;
    Rational prob = 1;
    for (std::size_t j = 0; j < m; ++j) {
      idx[j] = rest % deltas[j].size();
      rest /= deltas[j].size();
      prob *= deltas[j][idx[j]].first;
    }
    Rational best = 0;
    for (std::size_t a = 0; a < assignments; ++a) {
      std::fill(bundles.begin(), bundles.end(), 0);
      std::size_t code = a;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t owner = code % (m + 1);
        code /= m + 1;
        if (owner < m) bundles[owner] |= singleton(i);
      }
      Rational welfare = 0;
      for (std::size_t j = 0; j < m; ++j) welfare += deltas[j][idx[j]].second[bundles[j]];
      if (welfare > best) best = welfare;
    }
    total += prob * best;
  }
  return total;
}

namespace {

struct BidderData {
  const TypeSpace* base = nullptr;
  const TypeSpace* plus = nullptr;
  std::vector<double> base_cum;
  std::vector<double> plus_cum;
  /// Scaled integer edge weights [plus type][base type].
  std::vector<std::vector<std::int64_t>> weight;
};

struct Draw {
  std::size_t surrogate = 0;
  bool matched = false;
  Rational price;
};

class Simulator {
 public:
  Simulator(const DirectMechanism& m, const std::vector<CoupledPair>& pairs, const ReductionConfig& config)
      : m_(m), eps_(config.epsilon), r_(config.r) {
    if (pairs.size() != m.bidders()) throw ParameterError("one coupled pair per bidder is required");
    if (config.r == 0 || config.trials == 0) throw ParameterError("r and trials must be positive");
    if (eps_ <= 0 || eps_ >= 1) throw ParameterError("epsilon must lie in (0,1)");
    const DirectMechanism m_eps = m.discounted(eps_);
    for (std::size_t j = 0; j < m.bidders(); ++j) {
      const auto& pair = pairs[j];
      if (pair.base_space.size() != m.space(j).size()) throw ParameterError("coupled pair does not match M's type space");
      for (std::size_t k = 0; k < pair.base_space.size(); ++k) {
        if (!(pair.base_space[k].valuation == m.space(j)[k].valuation)) {
          throw ParameterError("coupled pair does not match M's type space");
        }
      }
      BidderData b;
      b.base = &pair.base_space;
      b.plus = &pair.plus_space;
      double acc = 0;
      for (const auto& e : pair.base_space.entries()) b.base_cum.push_back(acc += e.prob.get_d());
      acc = 0;
      for (const auto& e : pair.plus_space.entries()) b.plus_cum.push_back(acc += e.prob.get_d());

      std::vector<std::map<Subset, Rational>> alloc;
      std::vector<Rational> pay;
      for (std::size_t s = 0; s < pair.base_space.size(); ++s) {
        alloc.push_back(m_eps.interim_allocation(j, s));
        pay.push_back(m_eps.interim_payment(j, s));
      }
      std::vector<std::vector<Rational>> w(pair.plus_space.size());
      mpz_class den = 1;
      for (std::size_t k = 0; k < pair.plus_space.size(); ++k) {
        for (std::size_t s = 0; s < pair.base_space.size(); ++s) {
          Rational value = 0;
          for (const auto& [bundle, prob] : alloc[s]) value += prob * pair.plus_space[k].valuation(bundle);
          Rational x = value - pay[s];
          if (config.corruption == WeightCorruption::kIgnorePayments) x = value;
          if (config.corruption == WeightCorruption::kNegate) x = -x;
          mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
          w[k].push_back(std::move(x));
        }
      }
      den_.push_back(den);
      for (auto& row : w) {
        std::vector<std::int64_t> ints;
        for (auto& x : row) {
          mpz_class scaled = x.get_num() * (den / x.get_den());
          if (!scaled.fits_slong_p() || abs(scaled) > (mpz_class(1) << 40)) {
            throw ResourceError("edge weight bits", mpz_sizeinbase(scaled.get_mpz_t(), 2), 40);
          }
          ints.push_back(scaled.get_si());
        }
        b.weight.push_back(std::move(ints));
      }
      data_.push_back(std::move(b));
    }
  }

  std::size_t bidders() const { return data_.size(); }
  const DirectMechanism& mechanism() const { return m_; }
  const BidderData& data(std::size_t j) const { return data_[j]; }

  /// Phase one for bidder j in trial `index`; `report` overrides the sampled
  /// bidder type while its draw is still consumed, so streams stay aligned.
  Draw draw(std::uint64_t seed, std::uint64_t index, std::size_t j, std::optional<std::size_t> report = {}) const {
    auto rng = make_rng(seed, index * data_.size() + j);
    const BidderData& b = data_[j];
    std::size_t bidder_type = sample_cumulative(rng, b.plus_cum);
    if (report) bidder_type = *report;
    std::uniform_int_distribution<std::size_t> pos_dist(0, r_ - 1);
    const std::size_t pos = pos_dist(rng);
    std::vector<std::size_t> rows(r_), cols(r_);
    for (std::size_t k = 0; k < r_; ++k) rows[k] = k == pos ? bidder_type : sample_cumulative(rng, b.plus_cum);
    for (std::size_t k = 0; k < r_; ++k) cols[k] = sample_cumulative(rng, b.base_cum);
    std::vector<std::vector<std::int64_t>> w(r_, std::vector<std::int64_t>(r_));
    for (std::size_t a = 0; a < r_; ++a) {
      for (std::size_t c = 0; c < r_; ++c) w[a][c] = b.weight[rows[a]][cols[c]];
    }
    std::vector<bool> price_rows(r_, false);
    price_rows[pos] = true;
    const IntMatchingResult res = vcg_matching_int(w, &rng, &price_rows);
    Draw out;
    out.surrogate = cols[static_cast<std::size_t>(res.completion[pos])];
    out.matched = res.match[pos] >= 0;
    if (out.matched) {
      out.price = Rational(mpz_class(static_cast<long>(res.prices[pos])), den_[j]);
      out.price.canonicalize();
    }
    return out;
  }

  std::vector<Draw> trial(std::uint64_t seed, std::uint64_t index) const {
    std::vector<Draw> out;
    for (std::size_t j = 0; j < data_.size(); ++j) out.push_back(draw(seed, index, j));
    return out;
  }

  /// Phase two payment of bidder j: VCG price plus the discounted mechanism payment.
  Rational payment(const std::vector<Draw>& draws, std::size_t j) const {
    if (!draws[j].matched) return 0;
    const ProfileOutcome& po = m_.at(profile(draws));
    return draws[j].price + (1 - eps_) * po.payments[j];
  }

  Rational utility(const std::vector<Draw>& draws, std::size_t j, const Valuation& v) const {
    if (!draws[j].matched) return 0;
    const ProfileOutcome& po = m_.at(profile(draws));
    Rational u = -draws[j].price - (1 - eps_) * po.payments[j];
    for (const auto& o : po.lottery) u += o.prob * v(o.bundles[j]);
    return u;
  }

 private:
  std::size_t profile(const std::vector<Draw>& draws) const {
    std::vector<std::size_t> types;
    for (const auto& d : draws) types.push_back(d.surrogate);
    return m_.index(types);
  }

  const DirectMechanism& m_;
  Rational eps_;
  std::size_t r_;
  std::vector<BidderData> data_;
  std::vector<mpz_class> den_;
};

}  // namespace

RevenueEstimate run_reduction(const DirectMechanism& m, const std::vector<CoupledPair>& pairs,
                              const ReductionConfig& config, const Caps& caps) {
  if (!verify_bic(m).pass()) throw PreconditionError("base mechanism is not BIC and IR");
  for (const auto& p : pairs) check_dominance(p);
  const Simulator sim(m, pairs, config);
  RevenueEstimate est;
  est.r = config.r;
  est.trials = config.trials;
  est.rev_m = m.revenue();
  est.val_delta = val_delta(pairs, caps);
  est.bound = (1 - config.epsilon) * (est.rev_m - est.val_delta / config.epsilon);
  double sum = 0, sq = 0, vcg = 0, mech = 0;
  std::size_t matched = 0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const auto draws = sim.trial(config.seed, t);
    double total = 0;
    for (std::size_t j = 0; j < sim.bidders(); ++j) {
      if (!draws[j].matched) continue;
      ++matched;
      const double pay = sim.payment(draws, j).get_d();
      const double price = draws[j].price.get_d();
      total += pay;
      vcg += price;
      mech += pay - price;
    }
    sum += total;
    sq += total * total;
  }
  const double nn = static_cast<double>(config.trials);
  est.mean = sum / nn;
  est.stderr_ = std::sqrt(std::max(0.0, sq / nn - est.mean * est.mean) / nn);
  est.mean_vcg = vcg / nn;
  est.mean_mechanism = mech / nn;
  est.matched_rate = static_cast<double>(matched) / (nn * static_cast<double>(sim.bidders()));
  return est;
}

MarginalCheck surrogate_marginal_check(const DirectMechanism& m, const std::vector<CoupledPair>& pairs,
                                       const ReductionConfig& config, std::size_t bidder) {
  const Simulator sim(m, pairs, config);
  if (bidder >= sim.bidders()) throw ParameterError("bidder index out of range");
  const TypeSpace& base = *sim.data(bidder).base;
  MarginalCheck mc;
  mc.bidder = bidder;
  mc.counts.assign(base.size(), 0);
  for (std::size_t t = 0; t < config.trials; ++t) ++mc.counts[sim.draw(config.seed, t, bidder).surrogate];
  for (const auto& e : base.entries()) mc.expected.push_back(e.prob * static_cast<long>(config.trials));
  for (std::size_t k = 0; k < base.size(); ++k) {
    const double e = mc.expected[k].get_d();
    const double d = static_cast<double>(mc.counts[k]) - e;
    mc.chi_square += d * d / e;
  }
  if (base.size() > 1) {
    boost::math::chi_squared dist(static_cast<double>(base.size() - 1));
    mc.p_value = boost::math::cdf(boost::math::complement(dist, mc.chi_square));
  }
  return mc;
}

bool EmpiricalBicReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const BicRow& r) { return r.pass; });
}

EmpiricalBicReport verify_empirical_bic(const DirectMechanism& m, const std::vector<CoupledPair>& pairs,
                                        const ReductionConfig& config, std::size_t bidder) {
  const Simulator sim(m, pairs, config);
  if (bidder >= sim.bidders()) throw ParameterError("bidder index out of range");
  const TypeSpace& plus = *sim.data(bidder).plus;
  EmpiricalBicReport rep;
  rep.bidder = bidder;
  const std::size_t types = plus.size();
  // util[t][s][k]: utility of true type t reporting s in trial k.
  std::vector<std::vector<std::vector<double>>> util(types, std::vector<std::vector<double>>(types));
  for (std::size_t k = 0; k < config.trials; ++k) {
    std::vector<Draw> draws = sim.trial(config.seed, k);
    for (std::size_t s = 0; s < types; ++s) {
      draws[bidder] = sim.draw(config.seed, k, bidder, s);
      for (std::size_t t = 0; t < types; ++t) util[t][s].push_back(sim.utility(draws, bidder, plus[t].valuation).get_d());
    }
  }
  const double nn = static_cast<double>(config.trials);
  for (std::size_t t = 0; t < types; ++t) {
    for (std::size_t s = 0; s < types; ++s) {
      if (s == t) continue;
      BicRow row;
      row.type = t;
      row.report = s;
      double sum_h = 0, sum_m = 0, sum_d = 0, sq_d = 0;
      for (std::size_t k = 0; k < config.trials; ++k) {
        const double d = util[t][t][k] - util[t][s][k];
        sum_h += util[t][t][k];
        sum_m += util[t][s][k];
        sum_d += d;
        sq_d += d * d;
      }
      row.truthful = sum_h / nn;
      row.misreport = sum_m / nn;
      const double mean_d = sum_d / nn;
      row.diff_stderr = std::sqrt(std::max(0.0, sq_d / nn - mean_d * mean_d) / nn);
      row.pass = mean_d >= -3 * row.diff_stderr;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

AccountingCheck payment_accounting_check(const DirectMechanism& m, const std::vector<CoupledPair>& pairs,
                                         const ReductionConfig& config, std::size_t bidder, std::size_t pools) {
  if (bidder >= m.bidders()) throw ParameterError("bidder index out of range");
  const DirectMechanism m_eps = m.discounted(config.epsilon);
  const TypeSpace& base = pairs.at(bidder).base_space;
  const TypeSpace& plus = pairs.at(bidder).plus_space;
  std::vector<Rational> pay;
  for (std::size_t s = 0; s < base.size(); ++s) pay.push_back(m_eps.interim_payment(bidder, s));
  std::vector<double> base_cum, plus_cum;
  double acc = 0;
  for (const auto& e : base.entries()) base_cum.push_back(acc += e.prob.get_d());
  acc = 0;
  for (const auto& e : plus.entries()) plus_cum.push_back(acc += e.prob.get_d());

  AccountingCheck out;
  out.pools = pools;
  bool first = true;
  const Rational inv_r = ratio(1, static_cast<long>(config.r));
  for (std::size_t p = 0; p < pools; ++p) {
    auto rng = make_rng(config.seed, p);
    std::vector<std::size_t> rows(config.r), cols(config.r);
    for (auto& x : rows) x = sample_cumulative(rng, plus_cum);
    for (auto& x : cols) x = sample_cumulative(rng, base_cum);
    WeightMatrix w(config.r, std::vector<Rational>(config.r));
    for (std::size_t a = 0; a < config.r; ++a) {
      for (std::size_t c = 0; c < config.r; ++c) w[a][c] = edge_weight(plus[rows[a]].valuation, cols[c], bidder, m_eps);
    }
    const MatchingResult res = vcg_matching(w);
    // The bidder is each row with probability 1/r; the matching does not depend on which.
    Rational expected = 0, floor = 0;
    for (std::size_t a = 0; a < config.r; ++a) {
      if (!res.matched(a)) continue;
      const Rational& surrogate_pay = pay[cols[static_cast<std::size_t>(res.match[a])]];
      expected += inv_r * (*res.prices[a] + surrogate_pay);
      floor += inv_r * surrogate_pay;
    }
    const Rational slack = expected - floor;
    if (first || slack < out.min_slack) out.min_slack = slack;
    first = false;
    if (slack < 0) out.pass = false;
  }
  return out;
}

}  // namespace mechlab

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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mechlab/caps.hpp"
#include "mechlab/monotonicity.hpp"
#include "mechlab/rational.hpp"
#include "mechlab/subset.hpp"
#include "mechlab/valuation.hpp"

namespace mechlab {

/// One realization of a randomized allocation: a bundle per bidder.
struct Outcome {
  Rational prob;
  std::vector<Subset> bundles;
};

struct ProfileOutcome {
  std::vector<Outcome> lottery;
  std::vector<Rational> payments;
};

/// Tabular mechanism over the type spaces of m bidders. Profiles are indexed
/// mixed-radix with bidder 0 varying fastest.
class DirectMechanism {
 public:
  DirectMechanism() = default;
  DirectMechanism(std::vector<TypeSpace> bidders, std::vector<ProfileOutcome> table);

  std::size_t bidders() const noexcept { return spaces_.size(); }
  std::size_t items() const noexcept { return spaces_.empty() ? 0 : spaces_.front().n(); }
  const TypeSpace& space(std::size_t j) const { return spaces_[j]; }
  const std::vector<TypeSpace>& spaces() const noexcept { return spaces_; }
  std::size_t profiles() const noexcept { return table_.size(); }
  const ProfileOutcome& at(std::size_t profile) const { return table_[profile]; }
  std::size_t index(const std::vector<std::size_t>& types) const;
  std::vector<std::size_t> decode(std::size_t profile) const;
  Rational profile_prob(std::size_t profile) const;

  /// Expected revenue under truthful play.
  Rational revenue() const;

  /// Bundle distribution of bidder j reporting t, averaged over the others.
  std::map<Subset, Rational> interim_allocation(std::size_t j, std::size_t t) const;
  Rational interim_payment(std::size_t j, std::size_t t) const;
  /// Value of `v` for the interim allocation of report t, minus its interim payment.
  Rational interim_utility(std::size_t j, const Valuation& v, std::size_t t) const;

  /// Prices scaled by (1 - epsilon).
  DirectMechanism discounted(const Rational& epsilon) const;

 private:
  std::vector<TypeSpace> spaces_;
  std::vector<ProfileOutcome> table_;
};

struct BicViolation {
  std::size_t bidder = 0;
  std::size_t type = 0;
  /// Equal to `type` for an IR violation.
  std::size_t report = 0;
  Rational gain;
};

struct BicReport {
  bool bic = true;
  bool ir = true;
  std::vector<BicViolation> violations;
  bool pass() const { return bic && ir; }
};

/// Exact interim BIC and IR check.
BicReport verify_bic(const DirectMechanism& m);

/// Bidders pick in index order from the remaining items at fixed item prices.
DirectMechanism serial_posted_price(std::vector<TypeSpace> bidders, const std::vector<Rational>& prices,
                                    const Caps& caps = {});
/// A uniformly random bidder is offered the grand bundle at the reserve.
DirectMechanism grand_bundle_random_bidder(std::vector<TypeSpace> bidders, const Rational& reserve);

DirectMechanism discount_mechanism(const DirectMechanism& m, const Rational& epsilon);

/// Interim utility of a replica with valuation `replica` for surrogate type s under M^eps.
Rational edge_weight(const Valuation& replica, std::size_t s, std::size_t j, const DirectMechanism& m_eps);

/// Expected welfare of VCG for the coupling gaps delta_j = v+_j - v_j, items may go unallocated.
Rational val_delta(const std::vector<CoupledPair>& pairs, const Caps& caps = {});

enum class WeightCorruption { kNone, kIgnorePayments, kNegate };

struct ReductionConfig {
  Rational epsilon = Rational(1, 2);
  std::size_t r = 16;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  WeightCorruption corruption = WeightCorruption::kNone;
};

struct RevenueEstimate {
  std::size_t r = 0;
  std::size_t trials = 0;
  double mean = 0;
  double stderr_ = 0;
  double mean_vcg = 0;
  double mean_mechanism = 0;
  double matched_rate = 0;
  Rational rev_m;
  Rational val_delta;
  Rational bound;
  bool pass() const { return mean >= bound.get_d() - 3 * stderr_; }
};

/// Bidder j's coupled pair: base_space must be M's type space for j.
RevenueEstimate run_reduction(const DirectMechanism& m, const std::vector<CoupledPair>& pairs,
                              const ReductionConfig& config, const Caps& caps = {});

struct MarginalCheck {
  std::size_t bidder = 0;
  std::vector<std::size_t> counts;
  std::vector<Rational> expected;
  double chi_square = 0;
  double p_value = 1;
  bool pass(double alpha = 0.001) const { return p_value >= alpha; }
};

/// Goodness of fit of the surrogate chosen for a truthful bidder against D_j.
MarginalCheck surrogate_marginal_check(const DirectMechanism& m, const std::vector<CoupledPair>& pairs,
                                       const ReductionConfig& config, std::size_t bidder);

struct BicRow {
  std::size_t type = 0;
  std::size_t report = 0;
  double truthful = 0;
  double misreport = 0;
  double diff_stderr = 0;
  bool pass = true;
};

struct EmpiricalBicReport {
  std::size_t bidder = 0;
  std::vector<BicRow> rows;
  bool pass() const;
};

/// Paired simulation of bidder j's utility for every (type, report) pair in D+_j.
EmpiricalBicReport verify_empirical_bic(const DirectMechanism& m, const std::vector<CoupledPair>& pairs,
                                        const ReductionConfig& config, std::size_t bidder);

struct AccountingCheck {
  std::size_t pools = 0;
  Rational min_slack;
  bool pass = true;
};

/// On random pools, the exact expected payment of the bidder (uniform position)
/// is at least (1/r) times the surrogate payments of VCG-matched surrogates.
AccountingCheck payment_accounting_check(const DirectMechanism& m, const std::vector<CoupledPair>& pairs,
                                         const ReductionConfig& config, std::size_t bidder, std::size_t pools);

}  // namespace mechlab

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

#include <utility>
#include <vector>

#include "mechlab/rational.hpp"

namespace mechlab {

/// A discrete distribution on nonnegative rationals: distinct sorted values,
/// strictly positive probabilities summing to exactly one.
class OneDimDist {
 public:
  struct Atom {
    Rational value;
    Rational prob;
  };

  OneDimDist() = default;

  /// Merges equal values, drops zero-probability atoms, sorts ascending.
  /// Throws ParameterError when probabilities do not sum to one or a value is negative.
  explicit OneDimDist(std::vector<std::pair<Rational, Rational>> atoms);

  static OneDimDist point_mass(const Rational& value);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }

  Rational prob_ge(const Rational& w) const;
  Rational prob_gt(const Rational& w) const;
  Rational prob_eq(const Rational& w) const;
  Rational prob_le(const Rational& w) const;
  Rational mean() const;
  const Rational& max_value() const { return atoms_.back().value; }
  const Rational& min_value() const { return atoms_.front().value; }

  friend bool operator==(const OneDimDist& a, const OneDimDist& b);

 private:
  std::vector<Atom> atoms_;
};

}  // namespace mechlab

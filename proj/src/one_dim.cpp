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

#include "mechlab/one_dim.hpp"

#include <algorithm>

#include "mechlab/errors.hpp"

namespace mechlab {

OneDimDist::OneDimDist(std::vector<std::pair<Rational, Rational>> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Rational total = 0;
  for (auto& [value, prob] : atoms) {
    if (value < 0) throw ParameterError("one-dimensional distribution has a negative value");
    if (prob < 0) throw ParameterError("one-dimensional distribution has a negative probability");
    total += prob;
    if (prob == 0) continue;
    if (!atoms_.empty() && atoms_.back().value == value) {
      atoms_.back().prob += prob;
    } else {
      atoms_.push_back({value, prob});
    }
  }
  if (total != 1) throw ParameterError("probabilities sum to " + to_string(total) + ", not 1");
}

OneDimDist OneDimDist::point_mass(const Rational& value) {
  return OneDimDist({{value, Rational(1)}});
}

Rational OneDimDist::prob_ge(const Rational& w) const {
  Rational p = 0;
  for (const auto& a : atoms_) {
    if (a.value >= w) p += a.prob;
  }
  return p;
}

Rational OneDimDist::prob_gt(const Rational& w) const {
  Rational p = 0;
  for (const auto& a : atoms_) {
    if (a.value > w) p += a.prob;
  }
  return p;
}

Rational OneDimDist::prob_eq(const Rational& w) const {
  for (const auto& a : atoms_) {
    if (a.value == w) return a.prob;
  }
  return 0;
}

Rational OneDimDist::prob_le(const Rational& w) const { return Rational(1) - prob_gt(w); }

Rational OneDimDist::mean() const {
  Rational m = 0;
  for (const auto& a : atoms_) m += a.value * a.prob;
  return m;
}

bool operator==(const OneDimDist& a, const OneDimDist& b) {
  if (a.atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t i = 0; i < a.atoms_.size(); ++i) {
    if (a.atoms_[i].value != b.atoms_[i].value || a.atoms_[i].prob != b.atoms_[i].prob) return false;
  }
  return true;
}

}  // namespace mechlab

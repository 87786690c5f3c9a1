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

#include <string>

#include "mechlab/rational.hpp"

namespace mechlab {

/// Closed interval with rational endpoints. Every irrational quantity is carried
/// as an enclosure produced by directed rounding.
struct Interval {
  Rational lo;
  Rational hi;

  static Interval exact(const Rational& x) { return {x, x}; }
  bool is_exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Throws ParameterError when b contains zero.
Interval operator/(const Interval& a, const Interval& b);

Interval ln2_interval();
/// Natural log of a positive rational.
Interval log_interval(const Rational& x);
Interval exp_interval(const Interval& x);
/// base^exponent for base > 0.
Interval pow_interval(const Rational& base, const Interval& exponent);

enum class Verdict { kPass, kFail, kInconclusive };

std::string to_string(Verdict v);

/// lhs <= rhs decided soundly: pass only if lhs.hi <= rhs.lo, fail only if lhs.lo > rhs.hi.
Verdict compare_le(const Interval& lhs, const Interval& rhs);

}  // namespace mechlab

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

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace mechlab {

using Rational = mpq_class;

/// Parses "a", "a/b", "-a/b" or a decimal literal such as "0.25" / "1e-3"
/// into an exact rational. Throws ParseError on malformed input.
/// num/den in canonical form.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text);

/// Canonical "num/den" form (den >= 1, always present).
std::string to_string(const Rational& q);

/// Nearest double; for reporting only.
inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact rational value of a finite double.
Rational from_double(double d);

inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rmin(const Rational& a, const Rational& b) { return b < a ? b : a; }

/// a^e for a nonnegative integer exponent.
Rational pow(const Rational& base, unsigned exponent);

Rational sum(const std::vector<Rational>& values);

}  // namespace mechlab

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

#include "mechlab/bounds.hpp"

#include <mpfr.h>

#include <algorithm>

#include "mechlab/errors.hpp"

namespace mechlab {

namespace {

constexpr mpfr_prec_t kPrecision = 256;

class Mpfr {
 public:
  Mpfr() { mpfr_init2(v_, kPrecision); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;

  mpfr_ptr get() { return v_; }

  Rational to_rational() {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

 private:
  mpfr_t v_;
};

Rational bound_of(const Rational& x, mpfr_rnd_t rnd, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
  Mpfr in, out;
  mpfr_set_q(in.get(), x.get_mpq_t(), rnd);
  fn(out.get(), in.get(), rnd);
  return out.to_rational();
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  const Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0 && b.hi >= 0) throw ParameterError("interval division by an enclosure of zero");
  Rational one(1);
  return a * Interval{one / b.hi, one / b.lo};
}

Interval ln2_interval() {
  Mpfr lo, hi;
  mpfr_const_log2(lo.get(), MPFR_RNDD);
  mpfr_const_log2(hi.get(), MPFR_RNDU);
  return {lo.to_rational(), hi.to_rational()};
}

Interval log_interval(const Rational& x) {
  if (x <= 0) throw ParameterError("log of a nonpositive number");
  if (x == 1) return Interval::exact(0);
  return {bound_of(x, MPFR_RNDD, mpfr_log), bound_of(x, MPFR_RNDU, mpfr_log)};
}

Interval exp_interval(const Interval& x) {
  if (x.lo == 0 && x.hi == 0) return Interval::exact(1);
  return {bound_of(x.lo, MPFR_RNDD, mpfr_exp), bound_of(x.hi, MPFR_RNDU, mpfr_exp)};
}

Interval pow_interval(const Rational& base, const Interval& exponent) {
  if (base <= 0) throw ParameterError("pow base must be positive");
  return exp_interval(log_interval(base) * exponent);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

Verdict compare_le(const Interval& lhs, const Interval& rhs) {
  if (lhs.hi <= rhs.lo) return Verdict::kPass;
  if (lhs.lo > rhs.hi) return Verdict::kFail;
  return Verdict::kInconclusive;
}

}  // namespace mechlab

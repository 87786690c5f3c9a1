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

#include <cstddef>
#include <utility>
#include <vector>

#include "mechlab/rational.hpp"

namespace mechlab::lp {

/// maximize c.x  subject to  A x <= b,  x >= 0,  with b >= 0.
///
/// The origin is always feasible, so no phase one is needed.
struct LinearProgram {
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> terms;
    Rational rhs;
  };

  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Row> rows;

  std::size_t add_var(const Rational& cost) {
    objective.push_back(cost);
    return num_vars++;
  }
};

struct Options {
  /// Skip the floating-point warm start and pivot exactly from the slack basis.
  bool exact_only = false;
  std::size_t max_float_pivots = 200000;
  std::size_t max_exact_pivots = 100000;
};

struct Solution {
  Rational value;
  std::vector<Rational> x;
  /// One multiplier per row; certifies optimality via weak duality.
  std::vector<Rational> duals;
  std::size_t float_pivots = 0;
  std::size_t exact_pivots = 0;
  /// True when the floating-point basis was already exactly optimal.
  bool warm_start_certified = false;
};

/// Exact optimum. Throws InternalError when the LP is unbounded or the
/// solver exhausts its pivot budget; never returns an uncertified value.
Solution solve(const LinearProgram& lp, const Options& options = {});

/// Exact primal/dual feasibility and zero duality gap. Independent of solve().
bool certify(const LinearProgram& lp, const Solution& sol);

}  // namespace mechlab::lp

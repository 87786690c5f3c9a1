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

namespace mechlab {

/// Enumeration limits. These are configuration, never hard constants; every
/// operation that would exceed one raises ResourceError with the size it needed.
struct Caps {
  /// Largest n for which buyer demand is solved by subset enumeration.
  std::size_t demand_items = 20;
  /// Largest (#types x 2^n) materialized as an explicit type space.
  std::size_t type_space_cells = 20000;
  /// Largest number of price vectors visited by the SRev grid search.
  std::size_t price_grid = 2000000;
  /// Largest number of (support pair x set pair) comparisons in exhaustive checks.
  std::size_t exhaustive_checks = 50000000;
  /// Largest LP (rows x columns) handed to the exact solver.
  std::size_t lp_cells = 4000000;
};

}  // namespace mechlab

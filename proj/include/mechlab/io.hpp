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
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "mechlab/bic_reduction.hpp"
#include "mechlab/concentration.hpp"
#include "mechlab/core_tail.hpp"
#include "mechlab/monotonicity.hpp"
#include "mechlab/optimal_rev.hpp"
#include "mechlab/simple_mech.hpp"
#include "mechlab/valuation.hpp"

namespace mechlab {

using Json = nlohmann::ordered_json;

/// Accepts "a/b", "a", decimal strings and JSON integers.
Rational rational_from_json(const Json& j);
inline Json rational_to_json(const Rational& q) { return to_string(q); }

/// Throws ParseError on schema violations; model errors surface as ParameterError.
ValuationSpec instance_from_json(const Json& j);
Json instance_to_json(const ValuationSpec& spec);
ValuationSpec load_instance(const std::filesystem::path& path);
/// Writes through a temporary file and a rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

struct GenParams {
  std::size_t n_min = 2;
  std::size_t n_max = 3;
  std::size_t support_max = 3;
  /// Values are k/2 for k in [0, 2 * value_max].
  std::size_t value_max = 4;
  /// Subset of "additive", "kdemand", "downward_closed", "xos"; cycled in order.
  std::vector<std::string> classes = {"additive", "kdemand", "downward_closed", "xos"};
};

/// Instance `index` of the stream for `seed`; class is classes[index % size].
ValuationSpec generate_instance(std::uint64_t seed, std::size_t index, const GenParams& params = {});

struct CorpusEntry {
  std::string id;
  ValuationSpec spec;
};

std::vector<CorpusEntry> generate_corpus(std::uint64_t seed, std::size_t count, const GenParams& params = {});
/// Writes <id>.json per instance plus manifest.json.
void write_corpus(const std::filesystem::path& dir, std::uint64_t seed, const GenParams& params,
                  const std::vector<CorpusEntry>& corpus);
/// Reads manifest.json when present, else every *.json in name order.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

/// `transformed` shift/scale/floor couplings of generated instances, then
/// `dominators` single-dimensional dominators.
std::vector<std::pair<std::string, CoupledPair>> generate_pairs(std::uint64_t seed, std::size_t transformed,
                                                                std::size_t dominators, const GenParams& params = {},
                                                                const Caps& caps = {});

Json menu_to_json(const Menu& menu);
Json entry_to_json(const InequalityEntry& e);
Json to_json(const CutoffReport& r);
Json to_json(const DecompositionReport& r);
Json to_json(const ConcentrationReport& r);
Json to_json(const AlphaRow& r);
Json to_json(const RevenueEstimate& r);

struct BicReduceConfig {
  ValuationSpec instance;
  std::size_t bidders = 2;
  Rational epsilon = Rational(1, 2);
  std::vector<std::size_t> r_values = {4, 16, 64};
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  bool has_seed = false;
  /// "serial_posted_price" or "grand_bundle".
  std::string mechanism = "serial_posted_price";
  std::vector<Rational> prices;
  Rational reserve;
  std::vector<InfoTransform> coupling;
};

/// Relative "instance" paths resolve against `base`.
BicReduceConfig bicreduce_config_from_json(const Json& j, const std::filesystem::path& base = {});

}  // namespace mechlab

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

#include "mechlab/io.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "mechlab/errors.hpp"
#include "mechlab/rng.hpp"
#include "mechlab/subset.hpp"

namespace mechlab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) throw ParseError(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

Subset subset_from_json(const Json& j, std::size_t n) {
  if (j.is_number_unsigned()) return j.get<Subset>();
  if (!j.is_array()) throw ParseError("feasible set must be a bitmask or an item list");
  Subset s = 0;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || x.get<std::size_t>() >= n) throw ParseError("feasible set names an unknown item");
    s |= singleton(x.get<std::size_t>());
  }
  return s;
}

Json subset_to_json(Subset s) {
  Json out = Json::array();
  for (std::size_t i : members(s)) out.push_back(i);
  return out;
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(j.dump(), 10));
  // Floats go through their shortest decimal form.
  if (j.is_number_float()) return parse_rational(j.dump());
  throw ParseError("expected a rational, got " + j.dump());
}

ValuationSpec instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  const std::size_t n = size_field(j, "n");
  const Json& cls = field(j, "class");
  const Json& kind_j = field(cls, "kind");
  if (!kind_j.is_string()) throw ParseError("class kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  ValuationClass vc;
  if (kind == "additive") {
    vc = Additive{};
  } else if (kind == "kdemand") {
    vc = KDemand{size_field(cls, "k")};
  } else if (kind == "downward_closed") {
    DownwardClosed dc;
    const Json& fam = field(cls, "feasible");
    if (!fam.is_array()) throw ParseError("feasible must be an array");
    for (const auto& s : fam) dc.feasible.push_back(subset_from_json(s, n));
    vc = dc;
  } else if (kind == "xos") {
    vc = Xos{size_field(cls, "clauses")};
  } else {
    throw ParseError("unknown valuation class '" + kind + "'");
  }
  const Json& items = field(j, "items");
  if (!items.is_array() || items.size() != n) throw ParseError("items must be an array of length n");
  std::vector<PrivateInfoDist> dists;
  for (const auto& item : items) {
    const Json& support = field(item, "support");
    if (!support.is_array() || support.empty()) throw ParseError("support must be a nonempty array");
    std::vector<SupportPoint> points;
    for (const auto& pt : support) {
      const Json& x = field(pt, "x");
      Info info;
      if (x.is_array()) {
        for (const auto& c : x) info.push_back(rational_from_json(c));
      } else {
        info.push_back(rational_from_json(x));
      }
      points.push_back({std::move(info), rational_from_json(field(pt, "p"))});
    }
    dists.emplace_back(std::move(points));
  }
  return ValuationSpec(n, vc, std::move(dists));
}

Json instance_to_json(const ValuationSpec& spec) {
  Json out;
  out["n"] = spec.n();
  Json cls;
  cls["kind"] = class_name(spec.valuation_class());
  if (const auto* kd = std::get_if<KDemand>(&spec.valuation_class())) cls["k"] = kd->k;
  if (const auto* xos = std::get_if<Xos>(&spec.valuation_class())) cls["clauses"] = xos->clauses;
  if (const auto* dc = std::get_if<DownwardClosed>(&spec.valuation_class())) {
    std::vector<Subset> fam = dc->feasible;
    std::sort(fam.begin(), fam.end());
    Json f = Json::array();
    for (Subset s : fam) f.push_back(subset_to_json(s));
    cls["feasible"] = f;
  }
  out["class"] = cls;
  const bool vector_info = std::holds_alternative<Xos>(spec.valuation_class());
  Json items = Json::array();
  for (const auto& d : spec.items()) {
    Json support = Json::array();
    for (const auto& pt : d.support()) {
      Json p;
      if (vector_info) {
        Json x = Json::array();
        for (const auto& c : pt.info) x.push_back(to_string(c));
        p["x"] = x;
      } else {
        p["x"] = to_string(pt.info.front());
      }
      p["p"] = to_string(pt.prob);
      support.push_back(p);
    }
    items.push_back(Json{{"support", support}});
  }
  out["items"] = items;
  return out;
}

ValuationSpec load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

// Generator

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<Rational> random_probs(std::mt19937_64& rng, std::size_t k) {
  std::vector<long> w(k);
  long total = 0;
  for (auto& x : w) total += x = static_cast<long>(uniform(rng, 1, 4));
  std::vector<Rational> out;
  for (long x : w) out.push_back(ratio(x, total));
  return out;
}

Rational random_value(std::mt19937_64& rng, std::size_t value_max) {
  return ratio(static_cast<long>(uniform(rng, 0, 2 * value_max)), 2);
}

PrivateInfoDist random_item(std::mt19937_64& rng, const GenParams& params, std::size_t arity) {
  const std::size_t k = uniform(rng, 1, params.support_max);
  std::set<Info> seen;
  std::vector<Info> infos;
  while (infos.size() < k) {
    Info info;
    for (std::size_t c = 0; c < arity; ++c) info.push_back(random_value(rng, params.value_max));
    if (seen.insert(info).second) infos.push_back(std::move(info));
  }
  // Keep every item worth something.
  bool positive = false;
  for (const auto& info : infos) positive = positive || *std::max_element(info.begin(), info.end()) > 0;
  if (!positive) infos.back().back() = 1;
  const auto probs = random_probs(rng, k);
  std::vector<SupportPoint> pts;
  for (std::size_t i = 0; i < k; ++i) pts.push_back({infos[i], probs[i]});
  return PrivateInfoDist(std::move(pts));
}

std::vector<Subset> random_family(std::mt19937_64& rng, std::size_t n) {
  std::vector<char> in(std::size_t{1} << n, 0);
  in[0] = 1;
  for (std::size_t i = 0; i < n; ++i) in[singleton(i)] = 1;
  const std::size_t extra = uniform(rng, 0, 2);
  for (std::size_t e = 0; e < extra; ++e) {
    const Subset s = static_cast<Subset>(uniform(rng, 0, full_set(n)));
    // Close downward.
    for (Subset t = s;; t = (t - 1) & s) {
      in[t] = 1;
      if (t == 0) break;
    }
  }
  std::vector<Subset> out;
  for (Subset s = 0; s < in.size(); ++s) {
    if (in[s]) out.push_back(s);
  }
  return out;
}

}  // namespace

ValuationSpec generate_instance(std::uint64_t seed, std::size_t index, const GenParams& params) {
  if (params.classes.empty()) throw ParameterError("generator needs at least one class");
  if (params.n_min == 0 || params.n_min > params.n_max) throw ParameterError("invalid item-count range");
  if (params.support_max == 0 || params.value_max == 0) throw ParameterError("support and value ranges must be positive");
  auto rng = make_rng(seed, index);
  const std::string& kind = params.classes[index % params.classes.size()];
  const std::size_t n = uniform(rng, params.n_min, params.n_max);
  ValuationClass vc;
  std::size_t arity = 1;
  if (kind == "additive") {
    vc = Additive{};
  } else if (kind == "kdemand") {
    vc = KDemand{uniform(rng, 1, n - (n > 1 ? 1 : 0))};
  } else if (kind == "downward_closed") {
    vc = DownwardClosed{random_family(rng, n)};
  } else if (kind == "xos") {
    arity = uniform(rng, 1, 3);
    vc = Xos{arity};
  } else {
    throw ParameterError("unknown valuation class '" + kind + "'");
  }
  std::vector<PrivateInfoDist> items;
  for (std::size_t i = 0; i < n; ++i) items.push_back(random_item(rng, params, arity));
  return ValuationSpec(n, vc, std::move(items));
}

std::vector<CorpusEntry> generate_corpus(std::uint64_t seed, std::size_t count, const GenParams& params) {
  std::vector<CorpusEntry> out;
  for (std::size_t k = 0; k < count; ++k) {
    ValuationSpec spec = generate_instance(seed, k, params);
    char id[64];
    std::snprintf(id, sizeof id, "inst_%03zu_%s", k, params.classes[k % params.classes.size()].c_str());
    out.push_back({id, std::move(spec)});
  }
  return out;
}

void write_corpus(const std::filesystem::path& dir, std::uint64_t seed, const GenParams& params,
                  const std::vector<CorpusEntry>& corpus) {
  Json manifest;
  manifest["seed"] = seed;
  manifest["n_min"] = params.n_min;
  manifest["n_max"] = params.n_max;
  manifest["support_max"] = params.support_max;
  manifest["value_max"] = params.value_max;
  manifest["classes"] = params.classes;
  Json files = Json::array();
  for (const auto& e : corpus) {
    write_text_atomic(dir / (e.id + ".json"), instance_to_json(e.spec).dump(2) + "\n");
    files.push_back(Json{{"id", e.id}, {"file", e.id + ".json"}, {"class", class_name(e.spec.valuation_class())},
                         {"n", e.spec.n()}});
  }
  manifest["instances"] = files;
  write_text_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  std::vector<CorpusEntry> out;
  const auto manifest = dir / "manifest.json";
  if (std::filesystem::exists(manifest)) {
    std::ifstream in(manifest);
    Json m;
    try {
      m = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(manifest.string() + ": " + e.what());
    }
    for (const auto& f : field(m, "instances")) {
      const std::string file = field(f, "file").get<std::string>();
      const std::string id = f.contains("id") ? f.at("id").get<std::string>() : file;
      out.push_back({id, load_instance(dir / file)});
    }
    return out;
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.push_back({f.stem().string(), load_instance(f)});
  return out;
}

std::vector<std::pair<std::string, CoupledPair>> generate_pairs(std::uint64_t seed, std::size_t transformed,
                                                                std::size_t dominators, const GenParams& params,
                                                                const Caps& caps) {
  static const long kShift[] = {0, 1, 2};
  static const long kScale[] = {2, 3, 4};
  std::vector<std::pair<std::string, CoupledPair>> out;
  const std::uint64_t pair_seed = splitmix64(seed ^ 0x70616972ULL);
  for (std::size_t k = 0; k < transformed; ++k) {
    ValuationSpec spec = generate_instance(pair_seed, k, params);
    auto rng = make_rng(pair_seed, k + (std::uint64_t{1} << 32));
    std::vector<InfoTransform> ts;
    for (std::size_t i = 0; i < spec.n(); ++i) {
      InfoTransform t;
      t.shift = ratio(kShift[uniform(rng, 0, 2)], 2);
      t.scale = ratio(kScale[uniform(rng, 0, 2)], 2);
      t.floor = ratio(static_cast<long>(uniform(rng, 0, 1)), 2);
      ts.push_back(t);
    }
    char id[64];
    std::snprintf(id, sizeof id, "pair_%03zu_%s", k, class_name(spec.valuation_class()).c_str());
    out.emplace_back(id, couple(spec, std::move(ts), caps));
  }
  for (std::size_t k = 0; k < dominators; ++k) {
    ValuationSpec spec = generate_instance(pair_seed, transformed + k, params);
    char id[64];
    std::snprintf(id, sizeof id, "dominator_%03zu_%s", k, class_name(spec.valuation_class()).c_str());
    out.emplace_back(id, single_dim_dominator(spec, caps));
  }
  return out;
}

// Reports

Json menu_to_json(const Menu& menu) {
  Json out = Json::array();
  for (std::size_t t = 0; t < menu.size(); ++t) {
    Json alloc = Json::array();
    for (const auto& [s, w] : menu[t].weights) alloc.push_back(Json::array({s, to_string(w)}));
    out.push_back(Json{{"type", t}, {"allocation", alloc}, {"price", to_string(menu[t].price)}});
  }
  return out;
}

namespace {

Json interval_to_json(const Interval& x) {
  if (x.is_exact()) return to_string(x.lo);
  return Json{{"lo", to_string(x.lo)}, {"hi", to_string(x.hi)}};
}

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

}  // namespace

Json entry_to_json(const InequalityEntry& e) {
  Json out;
  out["name"] = e.name;
  out["statement"] = e.statement;
  out["lhs"] = interval_to_json(e.lhs);
  out["rhs"] = e.rhs_infinite ? Json("inf") : interval_to_json(e.rhs);
  out["slack"] = e.rhs_infinite ? Json("inf") : Json(to_string(e.slack()));
  out["verdict"] = to_string(e.verdict);
  return out;
}

Json to_json(const CutoffReport& r) {
  Json out;
  out["mode"] = to_string(r.mode);
  out["t"] = to_string(r.t);
  out["theta"] = to_string(r.theta);
  out["theta_exact"] = r.theta_exact;
  out["p"] = rationals(r.p);
  out["p_empty"] = to_string(r.p_empty);
  return out;
}

Json to_json(const DecompositionReport& r) {
  Json out;
  out["cutoff"] = to_json(r.cutoff);
  out["rev"] = to_string(r.rev);
  out["brev"] = to_string(r.brev);
  out["srev_star"] = to_string(r.srev_star);
  out["induced_revenue"] = to_string(r.induced_revenue);
  out["stitched"] = to_string(r.stitched);
  out["val_core"] = to_string(r.val_core);
  out["tail_contribution"] = to_string(r.tail_contribution);
  out["sum_item_rev"] = to_string(r.sum_item_rev);
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back(entry_to_json(e));
  out["entries"] = entries;
  out["pass"] = r.pass();
  return out;
}

Json to_json(const ConcentrationReport& r) {
  Json out;
  out["a"] = to_string(r.a);
  out["c"] = to_string(r.c);
  out["mean"] = to_string(r.mean);
  out["statistical"] = r.statistical;
  out["lipschitz_holds"] = r.lipschitz_holds;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json x;
    x["k"] = row.k;
    x["threshold"] = to_string(row.threshold);
    x["prob"] = to_string(row.prob);
    if (r.statistical) x["ci"] = Json::array({row.ci_lo, row.ci_hi});
    x["bound"] = interval_to_json(row.bound);
    x["verdict"] = to_string(row.verdict);
    rows.push_back(x);
  }
  out["rows"] = rows;
  out["mean_bound"] = entry_to_json(r.mean_bound);
  if (r.median_price) out["median_price"] = entry_to_json(*r.median_price);
  out["pass"] = r.pass();
  return out;
}

Json to_json(const AlphaRow& r) {
  Json out;
  out["id"] = r.id;
  out["rev"] = to_string(r.rev);
  out["rev_plus"] = to_string(r.rev_plus);
  out["gap"] = r.gap ? Json(to_string(*r.gap)) : Json("inf");
  out["brev"] = to_string(r.brev);
  out["brev_plus"] = to_string(r.brev_plus);
  out["srev_star"] = to_string(r.srev_star);
  out["srev_star_plus"] = to_string(r.srev_star_plus);
  out["alpha_pass"] = r.alpha_pass;
  out["brev_monotone"] = r.brev_monotone;
  out["srev_star_monotone"] = r.srev_star_monotone;
  out["rev_equals_brev"] = r.rev_equals_brev;
  out["pass"] = r.pass();
  return out;
}

Json to_json(const RevenueEstimate& r) {
  Json out;
  out["r"] = r.r;
  out["trials"] = r.trials;
  out["mean"] = r.mean;
  out["stderr"] = r.stderr_;
  out["mean_vcg"] = r.mean_vcg;
  out["mean_mechanism"] = r.mean_mechanism;
  out["matched_rate"] = r.matched_rate;
  out["rev_m"] = to_string(r.rev_m);
  out["val_delta"] = to_string(r.val_delta);
  out["bound"] = to_string(r.bound);
  out["pass"] = r.pass();
  return out;
}

BicReduceConfig bicreduce_config_from_json(const Json& j, const std::filesystem::path& base) {
  BicReduceConfig c;
  const Json& inst = field(j, "instance");
  if (inst.is_string()) {
    std::filesystem::path p = inst.get<std::string>();
    if (p.is_relative() && !base.empty()) p = base / p;
    c.instance = load_instance(p);
  } else {
    c.instance = instance_from_json(inst);
  }
  if (j.contains("bidders")) c.bidders = size_field(j, "bidders");
  if (j.contains("epsilon")) c.epsilon = rational_from_json(j.at("epsilon"));
  if (j.contains("r_values")) {
    c.r_values.clear();
    for (const auto& r : j.at("r_values")) {
      if (!r.is_number_unsigned()) throw ParseError("r_values must be positive integers");
      c.r_values.push_back(r.get<std::size_t>());
    }
  }
  if (j.contains("trials")) c.trials = size_field(j, "trials");
  if (j.contains("seed")) {
    c.seed = j.at("seed").get<std::uint64_t>();
    c.has_seed = true;
  }
  const Json& mech = field(j, "mechanism");
  c.mechanism = field(mech, "kind").get<std::string>();
  if (c.mechanism == "serial_posted_price") {
    for (const auto& p : field(mech, "prices")) c.prices.push_back(rational_from_json(p));
  } else if (c.mechanism == "grand_bundle") {
    c.reserve = rational_from_json(field(mech, "reserve"));
  } else {
    throw ParseError("unknown mechanism '" + c.mechanism + "'");
  }
  const Json& coupling = field(j, "coupling");
  if (!coupling.is_array() || coupling.size() != c.instance.n()) {
    throw ParseError("coupling must list one transform per item");
  }
  for (const auto& t : coupling) {
    InfoTransform tr;
    if (t.contains("scale")) tr.scale = rational_from_json(t.at("scale"));
    if (t.contains("shift")) tr.shift = rational_from_json(t.at("shift"));
    if (t.contains("floor")) tr.floor = rational_from_json(t.at("floor"));
    c.coupling.push_back(tr);
  }
  return c;
}

}  // namespace mechlab

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

// mechlab: batch runner for the revenue verification library.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mechlab/errors.hpp"
#include "mechlab/io.hpp"

namespace fs = std::filesystem;
using namespace mechlab;

namespace {

enum Exit { kOk = 0, kInequality = 1, kParse = 2, kCap = 3 };

struct Common {
  std::string instance;
  std::string corpus;
  std::optional<std::uint64_t> seed;
  std::string caps;
  std::string format = "json";
  std::string out;
  std::string mode = "exact_half";
  std::string epsilon = "1/2";
  std::vector<std::string> q;
};

Caps parse_caps(const std::string& text) {
  Caps caps;
  if (text.empty()) return caps;
  auto number = [](const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || v == 0) throw ParseError("caps must be positive integers, got '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  if (text.find('=') == std::string::npos) {
    const std::size_t v = number(text);
    caps = {v, v, v, v, v};
    return caps;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("caps entry '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq);
    const std::size_t v = number(item.substr(eq + 1));
    if (key == "demand_items") caps.demand_items = v;
    else if (key == "type_space_cells") caps.type_space_cells = v;
    else if (key == "price_grid") caps.price_grid = v;
    else if (key == "exhaustive_checks") caps.exhaustive_checks = v;
    else if (key == "lp_cells") caps.lp_cells = v;
    else throw ParseError("unknown cap '" + key + "'");
  }
  return caps;
}

std::uint64_t require_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("MECHLAB_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("MECHLAB_SEED is not an integer");
  }
  throw ParseError("this command is stochastic: pass --seed or set MECHLAB_SEED");
}

std::vector<CorpusEntry> inputs(const Common& c) {
  if (!c.instance.empty() && !c.corpus.empty()) throw ParseError("use either --instance or --corpus");
  if (!c.instance.empty()) return {{fs::path(c.instance).stem().string(), load_instance(c.instance)}};
  if (!c.corpus.empty()) return load_corpus(c.corpus);
  throw ParseError("an --instance or --corpus is required");
}

std::vector<Rational> parse_q(const Common& c, const ValuationSpec& spec) {
  if (c.q.empty()) {
    try {
      return compute_cutoff(spec, parse_cutoff_mode(c.mode)).p;
    } catch (const DegenerateInstanceError&) {
      return std::vector<Rational>(spec.n(), Rational(0));
    }
  }
  std::vector<Rational> q;
  for (const auto& s : c.q) q.push_back(parse_rational(s));
  if (q.size() == 1) q.assign(spec.n(), q.front());
  if (q.size() != spec.n()) throw ParseError("--q needs one value or one per item");
  for (const auto& x : q) {
    if (x < 0 || x > 1) throw ParseError("--q values must lie in [0,1]");
  }
  return q;
}

// CSV: a header and rows; fields with commas or quotes are quoted.
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& f) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) out += ',';
        if (f[i].find_first_of(",\"\n") != std::string::npos) {
          out += '"';
          for (char ch : f[i]) {
            if (ch == '"') out += '"';
            out += ch;
          }
          out += '"';
        } else {
          out += f[i];
        }
      }
      out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }
};

std::string cell(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void emit(const Common& c, const Json& report, const Csv& csv) {
  std::string text;
  if (c.format == "json") {
    text = report.dump(2) + "\n";
  } else {
    text = csv.str();
  }
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_text_atomic(c.out, text);
  }
}

void add_entry_rows(Csv& csv, const std::string& id, const std::vector<InequalityEntry>& entries) {
  for (const auto& e : entries) {
    // Conservative ends of the enclosures.
    const std::string rhs = e.rhs_infinite ? "inf" : to_string(e.rhs.lo);
    const std::string slack = e.rhs_infinite ? "inf" : to_string(e.slack());
    csv.rows.push_back({id, e.name, to_string(e.lhs.hi), rhs, slack, e.pass() ? "true" : "false"});
  }
}

// Subcommands. Each returns the exit status.

int cmd_gen(const Common& c, std::size_t count, const GenParams& params, const std::string& dir) {
  const std::uint64_t seed = require_seed(c);
  const auto corpus = generate_corpus(seed, count, params);
  if (dir.empty()) {
    Json all = Json::array();
    for (const auto& e : corpus) all.push_back(Json{{"id", e.id}, {"instance", instance_to_json(e.spec)}});
    std::cout << all.dump(2) << "\n";
  } else {
    write_corpus(dir, seed, params, corpus);
  }
  return kOk;
}

int cmd_rev(const Common& c, const Caps& caps) {
  Json report = Json::array();
  Csv csv{{"id", "type", "price", "allocation"}, {}};
  bool ok = true;
  for (const auto& e : inputs(c)) {
    const TypeSpace ts = enumerate_type_space(e.spec, caps);
    const RevResult r = exact_rev(ts, caps);
    const MenuReport check = verify_menu_ic(ts, r.menu);
    ok = ok && check.pass;
    Json j;
    j["id"] = e.id;
    j["rev"] = to_string(r.value);
    j["types"] = ts.size();
    j["distinct_types"] = r.distinct_types;
    j["lp_rows"] = r.lp_rows;
    j["lp_cols"] = r.lp_cols;
    j["menu_ic"] = check.pass;
    j["menu"] = menu_to_json(r.menu);
    report.push_back(j);
    for (const auto& m : j["menu"]) csv.rows.push_back({e.id, m["type"].dump(), m["price"], m["allocation"].dump()});
  }
  emit(c, report, csv);
  return ok ? kOk : kInequality;
}

int cmd_simple(const Common& c, const Caps& caps) {
  Json report = Json::array();
  Csv csv{{"id", "brev", "srev", "srev_star", "prices"}, {}};
  for (const auto& e : inputs(c)) {
    const auto q = parse_q(c, e.spec);
    const Rational b = brev(e.spec, caps);
    const ItemPricing s = srev_exact(e.spec, caps);
    const Rational star = srev_star(e.spec, q);
    Json prices = Json::array();
    for (const auto& p : s.prices) prices.push_back(to_string(p));
    Json qs = Json::array();
    for (const auto& x : q) qs.push_back(to_string(x));
    report.push_back(Json{{"id", e.id},
                          {"brev", to_string(b)},
                          {"srev", to_string(s.revenue)},
                          {"srev_star", to_string(star)},
                          {"q", qs},
                          {"prices", prices}});
    std::string joined;
    for (const auto& p : s.prices) joined += (joined.empty() ? "" : " ") + to_string(p);
    csv.rows.push_back({e.id, to_string(b), to_string(s.revenue), to_string(star), joined});
  }
  emit(c, report, csv);
  return kOk;
}

int cmd_chain(const Common& c, const Caps& caps, bool theorem_only) {
  ChainOptions opt;
  opt.mode = parse_cutoff_mode(c.mode);
  opt.epsilon = parse_rational(c.epsilon);
  if (opt.epsilon <= 0 || opt.epsilon >= 1) throw ParseError("--epsilon must lie in (0,1)");
  Json report = Json::array();
  Csv csv{{"id", "name", "lhs", "rhs", "slack", "pass"}, {}};
  bool ok = true;
  for (const auto& e : inputs(c)) {
    const DecompositionReport r = verify_chain(e.spec, opt, caps);
    std::vector<InequalityEntry> shown = r.entries;
    if (theorem_only) {
      const InequalityEntry* main = r.find("main_bound");
      if (!main) throw InternalError("chain report lacks main_bound");
      shown = {*main};
    }
    bool pass = true;
    for (const auto& x : shown) pass = pass && x.pass();
    ok = ok && pass;
    Json j;
    j["id"] = e.id;
    if (theorem_only) {
      j["rev"] = to_string(r.rev);
      j["srev_star"] = to_string(r.srev_star);
      j["brev"] = to_string(r.brev);
      j["entry"] = entry_to_json(shown.front());
      j["pass"] = pass;
    } else {
      Json body = to_json(r);
      j.update(body);
    }
    report.push_back(j);
    add_entry_rows(csv, e.id, shown);
    for (const auto& x : shown) {
      if (!x.pass()) std::cerr << e.id << ": " << x.name << " " << to_string(x.verdict) << " (" << x.statement << ")\n";
    }
  }
  emit(c, report, csv);
  return ok ? kOk : kInequality;
}

int cmd_concentration(const Common& c, const Caps& caps, unsigned k_max, std::size_t samples, bool force_mc) {
  ConcentrationOptions opt;
  opt.seed = require_seed(c);
  opt.samples = samples;
  opt.force_monte_carlo = force_mc;
  std::vector<unsigned> ks;
  for (unsigned k = 0; k <= k_max; ++k) ks.push_back(k);
  Json report = Json::array();
  Csv csv{{"id", "k", "threshold", "exact_prob", "bound", "pass"}, {}};
  bool ok = true;
  for (const auto& e : inputs(c)) {
    const ConcentrationReport r = verify_concentration(e.spec, ks, opt, caps);
    ok = ok && r.pass();
    Json j = to_json(r);
    j["id"] = e.id;
    report.push_back(j);
    for (const auto& row : j["rows"]) {
      csv.rows.push_back({e.id, row["k"].dump(), cell(row["threshold"]), cell(row["prob"]),
                          row["bound"].is_object() ? cell(row["bound"]["lo"]) : cell(row["bound"]),
                          row["verdict"] == "pass" ? "true" : "false"});
    }
  }
  emit(c, report, csv);
  return ok ? kOk : kInequality;
}

int cmd_mono(const Common& c, const Caps& caps, const std::string& alpha_text, std::size_t pairs_count,
             std::size_t dominators, const std::vector<std::string>& shift, const std::vector<std::string>& scale) {
  const Rational alpha = parse_rational(alpha_text);
  std::vector<std::pair<std::string, CoupledPair>> pairs;
  if (!c.instance.empty() || !c.corpus.empty()) {
    for (const auto& e : inputs(c)) {
      auto pick = [&](const std::vector<std::string>& v, std::size_t i, const char* fallback) {
        if (v.empty()) return parse_rational(fallback);
        return parse_rational(v.size() == 1 ? v.front() : v.at(i));
      };
      if ((shift.size() > 1 && shift.size() != e.spec.n()) || (scale.size() > 1 && scale.size() != e.spec.n())) {
        throw ParseError("--shift/--scale need one value or one per item");
      }
      std::vector<InfoTransform> ts;
      for (std::size_t i = 0; i < e.spec.n(); ++i) {
        InfoTransform t;
        t.shift = pick(shift, i, "1");
        t.scale = pick(scale, i, "1");
        ts.push_back(t);
      }
      pairs.emplace_back(e.id + ":transform", couple(e.spec, ts, caps));
      pairs.emplace_back(e.id + ":dominator", single_dim_dominator(e.spec, caps));
    }
  } else {
    pairs = generate_pairs(require_seed(c), pairs_count, dominators, GenParams{}, caps);
  }
  const AlphaReport r = verify_alpha_monotone(pairs, alpha, caps);
  Json report;
  report["alpha"] = to_string(r.alpha);
  report["measured_alpha"] = to_string(r.measured_alpha);
  Json rows = Json::array();
  Csv csv{{"pair_id", "rev", "rev_plus", "gap", "pass"}, {}};
  for (const auto& row : r.rows) {
    const Json j = to_json(row);
    rows.push_back(j);
    csv.rows.push_back({row.id, cell(j["rev"]), cell(j["rev_plus"]), cell(j["gap"]), row.pass() ? "true" : "false"});
  }
  report["pairs"] = rows;
  report["pass"] = r.pass();
  emit(c, report, csv);
  return r.pass() ? kOk : kInequality;
}

int cmd_bicreduce(const Common& c, const Caps& caps, const std::string& config_path, std::size_t check_bidder) {
  if (config_path.empty()) throw ParseError("bicreduce needs --config");
  std::ifstream in(config_path);
  if (!in) throw ParseError("cannot open " + config_path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(config_path + ": " + e.what());
  }
  BicReduceConfig cfg = bicreduce_config_from_json(j, fs::path(config_path).parent_path());
  if (c.seed || !cfg.has_seed) cfg.seed = require_seed(c);
  if (cfg.bidders == 0) throw ParseError("bidders must be positive");
  const TypeSpace ts = enumerate_type_space(cfg.instance, caps);
  std::vector<TypeSpace> spaces(cfg.bidders, ts);
  const DirectMechanism m = cfg.mechanism == "serial_posted_price" ? serial_posted_price(spaces, cfg.prices, caps)
                                                                   : grand_bundle_random_bidder(spaces, cfg.reserve);
  const CoupledPair pair = couple(cfg.instance, cfg.coupling, caps);
  const std::vector<CoupledPair> pairs(cfg.bidders, pair);
  if (check_bidder >= cfg.bidders) throw ParseError("--bidder out of range");

  Json report;
  report["seed"] = cfg.seed;
  report["epsilon"] = to_string(cfg.epsilon);
  report["rev_m"] = to_string(m.revenue());
  Json runs = Json::array();
  Csv csv{{"r", "mean_revenue", "stderr", "bound", "pass"}, {}};
  bool ok = true;
  for (std::size_t r : cfg.r_values) {
    ReductionConfig rc;
    rc.epsilon = cfg.epsilon;
    rc.r = r;
    rc.trials = cfg.trials;
    rc.seed = cfg.seed;
    const RevenueEstimate est = run_reduction(m, pairs, rc, caps);
    runs.push_back(to_json(est));
    std::ostringstream mean, se;
    mean.precision(10);
    se.precision(10);
    mean << est.mean;
    se << est.stderr_;
    csv.rows.push_back({std::to_string(r), mean.str(), se.str(), to_string(est.bound), est.pass() ? "true" : "false"});
  }
  // The guarantee is asserted at the largest r only.
  std::size_t largest = 0;
  for (std::size_t k = 0; k < cfg.r_values.size(); ++k) {
    if (cfg.r_values[k] > cfg.r_values[largest]) largest = k;
  }
  if (!cfg.r_values.empty()) ok = runs[largest]["pass"].get<bool>();
  report["runs"] = runs;
  if (!cfg.r_values.empty()) {
    ReductionConfig rc;
    rc.epsilon = cfg.epsilon;
    rc.r = cfg.r_values[largest];
    rc.trials = cfg.trials;
    rc.seed = cfg.seed;
    const MarginalCheck mc = surrogate_marginal_check(m, pairs, rc, check_bidder);
    Json counts = Json::array();
    for (auto x : mc.counts) counts.push_back(x);
    report["surrogate_marginal"] = Json{
        {"bidder", check_bidder}, {"counts", counts}, {"chi_square", mc.chi_square}, {"p_value", mc.p_value},
        {"pass", mc.pass()}};
    const EmpiricalBicReport bic = verify_empirical_bic(m, pairs, rc, check_bidder);
    Json rows = Json::array();
    for (const auto& row : bic.rows) {
      rows.push_back(Json{{"type", row.type},
                          {"report", row.report},
                          {"truthful", row.truthful},
                          {"misreport", row.misreport},
                          {"diff_stderr", row.diff_stderr},
                          {"pass", row.pass}});
    }
    report["empirical_bic"] = Json{{"bidder", check_bidder}, {"rows", rows}, {"pass", bic.pass()}};
    ok = ok && mc.pass() && bic.pass();
  }
  report["pass"] = ok;
  emit(c, report, csv);
  return ok ? kOk : kInequality;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mechlab: exact revenue bounds for a single buyer with subadditive valuations"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* sub, bool with_instance) {
    if (with_instance) {
      sub->add_option("--instance", c.instance, "Instance JSON file");
      sub->add_option("--corpus", c.corpus, "Directory of instances (manifest.json or *.json)");
    }
    sub->add_option("--seed", c.seed, "Seed (falls back to MECHLAB_SEED)");
    sub->add_option("--caps", c.caps, "Caps: one integer for all, or key=value,...");
    sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", c.out, "Write the report here instead of stdout");
  };

  auto* gen = app.add_subcommand("gen", "Generate a seeded instance corpus");
  common(gen, false);
  std::size_t count = 100;
  GenParams gp;
  std::string out_dir;
  gen->add_option("--count", count, "Number of instances");
  gen->add_option("--dir", out_dir, "Output directory (files plus manifest.json)");
  gen->add_option("--n-min", gp.n_min);
  gen->add_option("--n-max", gp.n_max);
  gen->add_option("--support-max", gp.support_max);
  gen->add_option("--value-max", gp.value_max);
  gen->add_option("--classes", gp.classes)->check(CLI::IsMember({"additive", "kdemand", "downward_closed", "xos"}));

  auto* rev = app.add_subcommand("rev", "Optimal revenue and menu via the exact LP");
  common(rev, true);
  auto* simple = app.add_subcommand("simple", "BRev, SRev and SRev*_q");
  common(simple, true);
  simple->add_option("--q", c.q, "Sale-probability caps (one, or one per item)");
  simple->add_option("--mode", c.mode, "Cutoff rule for the default q")
      ->check(CLI::IsMember({"exact_half", "threshold_only"}));
  auto* coretail = app.add_subcommand("coretail", "Core-tail inequality chain");
  common(coretail, true);
  auto* theorem = app.add_subcommand("theorem", "Rev <= 314 SRev* + 24 BRev");
  common(theorem, true);
  for (auto* sub : {coretail, theorem}) {
    sub->add_option("--mode", c.mode, "Cutoff rule")->check(CLI::IsMember({"exact_half", "threshold_only"}));
    sub->add_option("--epsilon", c.epsilon, "Marginal-mechanism epsilon");
  }

  auto* conc = app.add_subcommand("concentration", "Tail bounds for v([n])");
  common(conc, true);
  unsigned k_max = 10;
  std::size_t samples = 200000;
  bool force_mc = false;
  conc->add_option("--k-max", k_max);
  conc->add_option("--samples", samples, "Monte-Carlo draws when enumeration exceeds caps");
  conc->add_flag("--monte-carlo", force_mc, "Sample even when enumeration fits");

  auto* mono = app.add_subcommand("mono", "Approximate revenue monotonicity");
  common(mono, true);
  std::string alpha = "338";
  std::size_t pairs_count = 50, dominators = 25;
  std::vector<std::string> shift, scale;
  mono->add_option("--alpha", alpha);
  mono->add_option("--pairs", pairs_count, "Generated transform pairs (without --instance/--corpus)");
  mono->add_option("--dominators", dominators, "Generated single-dimensional dominators");
  mono->add_option("--shift", shift, "Per-item shift for --instance/--corpus");
  mono->add_option("--scale", scale, "Per-item scale for --instance/--corpus");

  auto* bic = app.add_subcommand("bicreduce", "Replica-surrogate reduction simulation");
  common(bic, false);
  std::string config;
  std::size_t check_bidder = 0;
  bic->add_option("--config", config, "Config JSON");
  bic->add_option("--bidder", check_bidder, "Bidder for the marginal and BIC checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    const Caps caps = parse_caps(c.caps);
    if (gen->parsed()) return cmd_gen(c, count, gp, out_dir);
    if (rev->parsed()) return cmd_rev(c, caps);
    if (simple->parsed()) return cmd_simple(c, caps);
    if (coretail->parsed()) return cmd_chain(c, caps, false);
    if (theorem->parsed()) return cmd_chain(c, caps, true);
    if (conc->parsed()) return cmd_concentration(c, caps, k_max, samples, force_mc);
    if (mono->parsed()) return cmd_mono(c, caps, alpha, pairs_count, dominators, shift, scale);
    if (bic->parsed()) return cmd_bicreduce(c, caps, config, check_bidder);
  } catch (const ResourceError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ParameterError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kInequality;
  }
  return kParse;
}

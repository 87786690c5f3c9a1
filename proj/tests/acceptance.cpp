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

// One line per acceptance criterion; nonzero exit when any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "mechlab/bic_reduction.hpp"
#include "mechlab/concentration.hpp"
#include "mechlab/core_tail.hpp"
#include "mechlab/io.hpp"
#include "mechlab/matching.hpp"
#include "mechlab/monotonicity.hpp"
#include "mechlab/optimal_rev.hpp"
#include "mechlab/rng.hpp"
#include "mechlab/simple_mech.hpp"

using namespace mechlab;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kCorpusSeed = 2026;
constexpr std::size_t kCorpusSize = 100;
constexpr std::uint64_t kFixtureSeed = 20261019;

struct Line {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int k, const Line& line, double secs) {
  if (!line.pass) ++failures;
  std::printf("criterion %d: %s  %s  (%.1fs)\n", k, line.pass ? "PASS" : "FAIL", line.detail.c_str(), secs);
  std::fflush(stdout);
}

void run(int k, const std::function<Line()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Line line;
  try {
    line = f();
  } catch (const std::exception& e) {
    line = {false, std::string("exception: ") + e.what()};
  }
  report(k, line, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> c = generate_corpus(kCorpusSeed, kCorpusSize);
  return c;
}

// Best posted price straight from the atoms.
Rational posted_oracle(const OneDimDist& d) {
  Rational best = 0;
  for (const auto& a : d.atoms()) {
    Rational tail = 0;
    for (const auto& b : d.atoms())
      if (b.value >= a.value) tail += b.prob;
    best = std::max(best, Rational(a.value * tail));
  }
  return best;
}

// Max weight over partial matchings, optionally with one row removed.
Rational matching_oracle(const WeightMatrix& w, int skip) {
  const std::size_t r = w.size();
  std::vector<int> perm(r);
  for (std::size_t i = 0; i < r; ++i) perm[i] = static_cast<int>(i);
  Rational best = 0;
  do {
    Rational acc = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (static_cast<int>(i) != skip && w[i][perm[i]] > 0) acc += w[i][perm[i]];
    best = std::max(best, acc);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Line c1() {
  std::size_t ok = 0;
  Rational min_slack;
  bool first = true;
  std::string bad;
  for (const auto& e : corpus()) {
    const auto rep = verify_chain(e.spec);
    const auto* m = rep.find("main_bound");
    if (m && m->pass() && m->slack() >= 0) {
      ++ok;
      if (first || m->slack() < min_slack) min_slack = m->slack();
      first = false;
    } else if (bad.empty()) {
      bad = e.id;
    }
  }
  std::ostringstream os;
  os << ok << "/" << corpus().size() << " instances, min slack " << min_slack.get_d();
  if (!bad.empty()) os << ", first failure " << bad;
  return {ok == corpus().size(), os.str()};
}

Line c2() {
  std::size_t entries = 0, failed = 0;
  std::string bad;
  for (const auto& e : corpus()) {
    const auto rep = verify_chain(e.spec);
    for (const auto& x : rep.entries) {
      ++entries;
      if (!x.pass()) {
        ++failed;
        if (bad.empty()) bad = e.id + ":" + x.name;
      }
    }
  }
  std::ostringstream os;
  os << entries << " entries, " << failed << " failures";
  if (!bad.empty()) os << ", first " << bad;
  return {failed == 0 && entries == 7 * corpus().size(), os.str()};
}

Line c3() {
  std::size_t additive = 0, ok = 0;
  for (const auto& e : corpus()) {
    if (class_name(e.spec.valuation_class()) != "additive") continue;
    ++additive;
    Rational sum = 0, oracle = 0;
    for (std::size_t i = 0; i < e.spec.n(); ++i) {
      const auto d = single_item_dist(e.spec, i);
      sum += myerson_one_dim(d).revenue;
      oracle += posted_oracle(d);
    }
    if (srev_exact(e.spec).revenue == sum && sum == oracle) ++ok;
  }
  bool witness = true;
  for (std::size_t n : {2u, 3u}) {
    const ValuationSpec s(n, KDemand{1}, std::vector<PrivateInfoDist>(n, PrivateInfoDist::point_mass({Rational(2)})));
    Rational items = 0;
    for (std::size_t i = 0; i < n; ++i) items += exact_rev(enumerate_type_space(restrict(s, singleton(i)))).value;
    witness = witness && items == static_cast<long>(n) * srev_exact(s).revenue && items == 2 * static_cast<long>(n);
  }
  std::ostringstream os;
  os << ok << "/" << additive << " additive instances separable, unit-demand witness "
     << (witness ? "holds" : "broken");
  return {additive > 0 && ok == additive && witness, os.str()};
}

Line c4() {
  const auto r = rev_q(OneDimDist::point_mass(Rational(1)), Rational(1, 2));
  return {r.revenue == Rational(1, 2), "rev_q = " + to_string(r.revenue)};
}

Line c5() {
  std::vector<unsigned> ks;
  for (unsigned k = 0; k <= 10; ++k) ks.push_back(k);
  std::size_t checked = 0, skipped = 0, violations = 0;
  for (const auto& e : corpus()) {
    const auto rep = verify_concentration(e.spec, ks);
    if (rep.statistical) {
      ++skipped;
      continue;
    }
    ++checked;
    for (const auto& row : rep.rows)
      if (row.verdict != Verdict::kPass) ++violations;
    if (!rep.mean_bound.pass()) ++violations;
  }
  std::ostringstream os;
  os << checked << " enumerated instances (" << skipped << " sampled, skipped), " << violations << " violations";
  return {checked > 0 && violations == 0, os.str()};
}

Line c6() {
  const auto pairs = generate_pairs(kCorpusSeed, 50, 25);
  const auto rep = verify_alpha_monotone(pairs, Rational(338));
  std::size_t transform = 0, single = 0, alpha_ok = 0, brev_ok = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i].second;
    const auto& row = rep.rows[i];
    if (338 * row.rev_plus >= row.rev) ++alpha_ok;
    if (p.kind == CoupledPair::Kind::kSingleDimensional) {
      ++single;
      if (row.rev_plus == row.brev_plus && row.rev_equals_brev) ++brev_ok;
    } else {
      ++transform;
    }
  }
  std::ostringstream os;
  os << transform << " transform + " << single << " dominator pairs, alpha holds on " << alpha_ok
     << ", Rev=BRev on " << brev_ok << "/" << single << ", measured alpha " << to_string(rep.measured_alpha);
  return {transform == 50 && single == 25 && alpha_ok == pairs.size() && brev_ok == single && rep.pass(), os.str()};
}

Line c7() {
  const auto u = PrivateInfoDist::uniform({Rational(1), Rational(2)});
  const ValuationSpec add(2, Additive{}, {u, u});
  const auto ts = enumerate_type_space(add);
  const auto m = serial_posted_price({ts, ts}, {Rational(3, 2), Rational(3, 2)});
  InfoTransform sh;
  sh.shift = Rational(1, 4);
  const auto id = couple(add, {InfoTransform::identity(), InfoTransform::identity()});
  const auto plus = couple(add, {sh, sh});

  bool ok = verify_bic(m).pass();
  std::ostringstream os;
  for (const auto* p : {&id, &plus}) {
    os << (p == &id ? "identity" : "shift") << ":";
    for (std::size_t r : {4u, 16u, 64u}) {
      ReductionConfig c;
      c.r = r;
      c.trials = 10000;
      c.seed = kFixtureSeed;
      const auto e = run_reduction(m, {*p, *p}, c);
      os << " r" << r << "=" << e.mean;
      if (r == 64) {
        os << " (bound " << to_string(e.bound) << ", 3se " << 3 * e.stderr_ << ")";
        ok = ok && e.pass();
      }
    }
    os << "; ";
  }

  ReductionConfig c;
  c.r = 64;
  c.trials = 10000;
  c.seed = kFixtureSeed;
  const auto mc = surrogate_marginal_check(m, {plus, plus}, c, 0);
  const auto bic = verify_empirical_bic(m, {plus, plus}, c, 0);
  ok = ok && mc.pass(0.001) && bic.pass();
  os << "marginal p " << mc.p_value << "; empirical BIC " << (bic.pass() ? "ok" : "violated") << " over "
     << bic.rows.size() << " misreports; ";

  std::size_t agree = 0;
  for (std::size_t t = 0; t < 1000; ++t) {
    auto rng = make_rng(kFixtureSeed, t);
    const std::size_t r = 1 + rng() % 6;
    const long range = 1 + static_cast<long>(rng() % 6);
    WeightMatrix w(r, std::vector<Rational>(r));
    for (auto& row : w)
      for (auto& x : row) x = ratio(static_cast<long>(rng() % (2 * range + 1)) - range, 1 + static_cast<long>(rng() % 3));
    const auto got = vcg_matching(w);
    const auto brute = brute_force_matching(w);
    const Rational best = matching_oracle(w, -1);
    bool same = got.weight == best && got.match == brute.match && got.weight == brute.weight;
    for (std::size_t i = 0; i < r && same; ++i) {
      if (!got.matched(i)) continue;
      const Rational price = matching_oracle(w, static_cast<int>(i)) - (best - w[i][got.match[i]]);
      same = got.prices[i] && *got.prices[i] == price && brute.prices[i] == got.prices[i];
    }
    if (same) ++agree;
  }
  os << "matching oracle " << agree << "/1000";
  return {ok && agree == 1000, os.str()};
}

Line c8() {
  GenParams gp;
  gp.n_min = 2;
  gp.n_max = 2;
  gp.support_max = 2;
  std::size_t total = 0, equal = 0, ic = 0, lp_ge = 0;
  std::string example;
  for (std::size_t k = 0; total < 50; ++k) {
    const auto spec = generate_instance(kCorpusSeed, k, gp);
    const auto ts = enumerate_type_space(spec);
    if (ts.size() != 4) continue;
    ++total;
    const auto lp = exact_rev(ts);
    const Rational det = best_deterministic_menu_revenue(ts);
    if (verify_menu_ic(ts, lp.menu).pass) ++ic;
    if (lp.value >= det) ++lp_ge;
    if (lp.value == det) {
      ++equal;
    } else if (example.empty()) {
      example = "instance " + std::to_string(k) + " (" + class_name(spec.valuation_class()) + "): lp " +
                to_string(lp.value) + " vs deterministic " + to_string(det);
    }
  }
  std::ostringstream os;
  os << "exact on " << equal << "/" << total << ", lp >= deterministic on " << lp_ge << ", menus IC on " << ic;
  if (!example.empty()) os << "; lotteries strictly better on e.g. " << example;
  return {equal == total, os.str()};
}

Line c9() {
  const fs::path dir = fs::temp_directory_path() / ("mechlab_accept_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = MECHLAB_CLI;
  auto sh = [&](const std::string& args, const fs::path& out) {
    const std::string cmd = "\"" + cli + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
    return std::system(cmd.c_str());
  };

  {
    std::ofstream cfg(dir / "bic.json");
    cfg << R"({"instance": ")" << (fs::path(MECHLAB_CONFIGS) / "fixture_instance.json").string()
        << R"(", "bidders": 2, "epsilon": "1/2", "r_values": [4, 8], "trials": 300, "seed": 7,
 "mechanism": {"kind": "serial_posted_price", "prices": ["3/2", "3/2"]},
 "coupling": [{"shift": "1/4"}, {"shift": "1/4"}]})";
  }
  if (sh("gen --seed 11 --count 8 --dir \"" + (dir / "corpus").string() + "\"", dir / "gen.log") != 0)
    return {false, "gen failed"};
  const std::string inst = "--instance \"" + (dir / "corpus" / "inst_001_kdemand.json").string() + "\"";
  const std::string corp = "--corpus \"" + (dir / "corpus").string() + "\"";
  const std::vector<std::string> commands = {
      "gen --seed 11 --count 8",
      "rev " + inst,
      "simple " + inst,
      "coretail " + corp,
      "theorem " + corp + " --format csv",
      "concentration " + inst + " --seed 3",
      "concentration " + inst + " --seed 3 --monte-carlo --samples 2000",
      "mono --seed 5 --pairs 3 --dominators 2",
      "bicreduce --config \"" + (dir / "bic.json").string() + "\"",
  };
  std::size_t same = 0;
  std::string bad;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const fs::path a = dir / ("a" + std::to_string(i)), b = dir / ("b" + std::to_string(i));
    const int ra = sh(commands[i], a), rb = sh(commands[i], b);
    const std::string x = slurp(a), y = slurp(b);
    if (ra == 0 && rb == 0 && !x.empty() && x == y) {
      ++same;
    } else if (bad.empty()) {
      bad = commands[i].substr(0, commands[i].find(' '));
    }
  }
  fs::remove_all(dir);
  std::ostringstream os;
  os << same << "/" << commands.size() << " commands byte-identical across two runs";
  if (!bad.empty()) os << ", first mismatch " << bad;
  return {same == commands.size(), os.str()};
}

}  // namespace

int main() {
  run(1, c1);
  run(2, c2);
  run(3, c3);
  run(4, c4);
  run(5, c5);
  run(6, c6);
  run(7, c7);
  run(8, c8);
  run(9, c9);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

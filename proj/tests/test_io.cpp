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

#include <filesystem>
#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "mechlab/errors.hpp"
#include "mechlab/io.hpp"

using namespace mechlab;
using namespace mechlab::testing;

TEST_SUITE("io") {
  TEST_CASE("rationals") {
    CHECK(rational_from_json(Json("3/6")) == R(1, 2));
    CHECK(rational_from_json(Json(4)) == 4);
    CHECK(rational_from_json(Json(0.25)) == R(1, 4));
    CHECK(rational_from_json(Json("1.5")) == R(3, 2));
    CHECK_THROWS_AS(rational_from_json(Json("1/0")), ParseError);
    CHECK_THROWS_AS(rational_from_json(Json::array()), ParseError);
    CHECK(rational_to_json(R(2)) == "2/1");
  }

  TEST_CASE("instance round trip") {
    const ValuationSpec xos(2, Xos{2},
                            {PrivateInfoDist({{{R(1), R(0)}, R(1, 3)}, {{R(0), R(5, 2)}, R(2, 3)}}),
                             PrivateInfoDist({{{R(2), R(2)}, R(1)}})});
    const ValuationSpec dc(3, DownwardClosed{{0, 1, 2, 4, 3}}, std::vector<PrivateInfoDist>(3, PrivateInfoDist::uniform({0, 1})));
    for (const auto* s : {&xos, &dc}) {
      const Json j = instance_to_json(*s);
      const ValuationSpec back = instance_from_json(j);
      CHECK(instance_to_json(back).dump() == j.dump());
      CHECK(enumerate_type_space(back).size() == enumerate_type_space(*s).size());
    }
    const Json k = instance_to_json(uniform12(KDemand{1}));
    CHECK(k["class"]["k"] == 1);
    CHECK(k["items"][0]["support"][0]["x"] == "1/1");
  }

  TEST_CASE("schema errors") {
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"n": 1})")), ParseError);
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"n": 1, "class": {"kind": "gross"}, "items": []})")), ParseError);
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"n": 2, "class": {"kind": "additive"},
        "items": [{"support": [{"x": 1, "p": "1/1"}]}]})")),
                    ParseError);
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"n": 1, "class": {"kind": "additive"},
        "items": [{"support": [{"x": 1, "p": "1/2"}]}]})")),
                    ParameterError);
    const ValuationSpec ok = instance_from_json(Json::parse(R"({"n": 1, "class": {"kind": "kdemand", "k": 1},
        "items": [{"support": [{"x": "3", "p": "1/4"}, {"x": 0.5, "p": "3/4"}]}]})"));
    CHECK(single_item_dist(ok, 0).prob_eq(R(1, 2)) == R(3, 4));
  }

  TEST_CASE("generator is deterministic and valid") {
    const auto a = generate_corpus(42, 20);
    const auto b = generate_corpus(42, 20);
    REQUIRE(a.size() == 20);
    std::map<std::string, int> classes;
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].id == b[k].id);
      CHECK(instance_to_json(a[k].spec).dump() == instance_to_json(b[k].spec).dump());
      CHECK(a[k].spec.n() >= 2);
      CHECK(a[k].spec.n() <= 3);
      for (const auto& item : a[k].spec.items()) CHECK(item.size() <= 3);
      CHECK(check_axioms(a[k].spec).pass);
      ++classes[class_name(a[k].spec.valuation_class())];
    }
    CHECK(classes.size() == 4);
    for (const auto& [name, count] : classes) CHECK(count == 5);
    CHECK(instance_to_json(generate_instance(43, 0)).dump() != instance_to_json(a[0].spec).dump());
  }

  TEST_CASE("corpus files") {
    const auto dir = std::filesystem::temp_directory_path() / "mechlab_io_test";
    std::filesystem::remove_all(dir);
    const auto corpus = generate_corpus(7, 8);
    write_corpus(dir, 7, GenParams{}, corpus);
    CHECK(std::filesystem::exists(dir / "manifest.json"));
    const auto back = load_corpus(dir);
    REQUIRE(back.size() == 8);
    for (std::size_t k = 0; k < 8; ++k) {
      CHECK(back[k].id == corpus[k].id);
      CHECK(instance_to_json(back[k].spec).dump() == instance_to_json(corpus[k].spec).dump());
    }
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("bicreduce config") {
    const Json j = Json::parse(R"({"instance": {"n": 1, "class": {"kind": "additive"},
        "items": [{"support": [{"x": "1", "p": "1/2"}, {"x": "2", "p": "1/2"}]}]},
        "r_values": [2, 4], "trials": 50, "seed": 9,
        "mechanism": {"kind": "serial_posted_price", "prices": ["3/2"]},
        "coupling": [{"shift": "1/2"}]})");
    const BicReduceConfig c = bicreduce_config_from_json(j);
    CHECK(c.r_values == std::vector<std::size_t>{2, 4});
    CHECK(c.has_seed);
    CHECK(c.prices == std::vector<Rational>{R(3, 2)});
    CHECK(c.coupling[0].shift == R(1, 2));
    Json bad = j;
    bad["coupling"] = Json::array();
    CHECK_THROWS_AS(bicreduce_config_from_json(bad), ParseError);
  }

  TEST_CASE("reports carry exact strings") {
    const DecompositionReport r = verify_chain(iid(1, Additive{}, PrivateInfoDist::uniform({1, 2})));
    const Json j = to_json(r);
    CHECK(j["rev"] == "1/1");
    CHECK(j["entries"].size() == 7);
    CHECK(j["entries"][0]["name"] == "subdomain_stitching");
    CHECK(j["pass"] == true);
  }
}

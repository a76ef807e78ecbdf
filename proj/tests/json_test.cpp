#include "doctest.h"
#include "endow/generator.hpp"
#include "endow/json_io.hpp"
#include "endow/solvers.hpp"
#include "fixtures.hpp"

using namespace endow;
using test::load_case;

TEST_CASE("economy documents round-trip") {
  GeneratorConfig cfg;
  cfg.seed = 31;
  for (int trial = 0; trial < 30; ++trial) {
    Economy e = generate_economy(cfg, trial);
    CHECK(economy_from_json(economy_to_json(e)) == e);
  }
}

TEST_CASE("economy documents reject unknown fields") {
  Json j = economy_to_json(load_case("case01"));
  j["comment"] = "nope";
  CHECK_THROWS_AS(economy_from_json(j), parse_error);

  Json j2 = economy_to_json(load_case("case01"));
  j2["owners"]["zzz"] = Json::array({"1"});
  CHECK_THROWS_AS(economy_from_json(j2), parse_error);

  CHECK_THROWS_AS(load_economy_file("/nonexistent/economy.json"), parse_error);
}

TEST_CASE("allocation documents validate totality and injectivity") {
  Economy e = load_case("case01");
  Json good = {{"1", "a"}, {"2", nullptr}, {"3", "b"}};
  Allocation a = allocation_from_json(e, good);
  CHECK(allocation_from_json(e, allocation_to_json(e, a.view())) == a);

  Json missing = {{"1", "a"}, {"2", nullptr}};
  CHECK_THROWS_WITH_AS(allocation_from_json(e, missing),
                       doctest::Contains("missing agent"), parse_error);

  Json doubled = {{"1", "a"}, {"2", "a"}, {"3", nullptr}};
  CHECK_THROWS_WITH_AS(allocation_from_json(e, doubled),
                       doctest::Contains("assigned twice"), parse_error);

  Json unknown = {{"1", "a"}, {"2", "zzz"}, {"3", nullptr}};
  CHECK_THROWS_AS(allocation_from_json(e, unknown), parse_error);
}

TEST_CASE("solution report serialization shape") {
  Economy e = load_case("case04");
  Json j = report_to_json(e, solve(e, Solution::StrongCore));
  CHECK(j.at("concept") == "strong");
  CHECK(j.at("members").size() == 2);
  CHECK(j.at("excluded").size() == 2);
  for (const Json& entry : j.at("excluded")) {
    CHECK(entry.contains("allocation"));
    CHECK(entry.at("certificate").contains("concept"));
    CHECK(entry.at("certificate").at("concept") == "weak");
    CHECK(entry.at("certificate").contains("coalition"));
    CHECK(entry.at("certificate").contains("via"));
  }
}

TEST_CASE("allocation sets serialize in canonical order") {
  Economy e = load_case("case04");
  AllocationSet all = enumerate_allocations(e);
  Json arr = allocation_set_to_json(e, all);
  REQUIRE(arr.size() == 4);
  CHECK(arr[0] == Json({{"1", nullptr}, {"2", nullptr}, {"3", nullptr}}));
  CHECK(arr[1] == Json({{"1", nullptr}, {"2", nullptr}, {"3", "a"}}));
}

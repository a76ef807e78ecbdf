#include <algorithm>

#include "doctest.h"
#include "endow/economy.hpp"
#include "endow/generator.hpp"
#include "fixtures.hpp"

using namespace endow;
using test::load_case;
using test::make_coalition;
using test::make_objects;

namespace {

bool has_error(const Validation& v, const std::string& needle) {
  return std::any_of(v.errors.begin(), v.errors.end(), [&](const std::string& e) {
    return e.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("validation accepts the monopoly fixture") {
  Economy e = load_case("case01");
  CHECK(e.num_agents() == 3);
  CHECK(e.num_objects() == 2);
  CHECK(e.owners(*e.object_index("a")) == make_coalition(e, {"1"}).mask());
}

TEST_CASE("validation reports the offending identifier") {
  EconomyDraft draft;
  draft.agents = {"1", "2"};
  draft.objects = {"a"};
  draft.owners = {{"a", {}}};
  draft.preferences = {{"1", {"a"}}, {"2", {"a"}}};
  Validation v = Economy::validate(draft);
  CHECK(!v.ok());
  CHECK(has_error(v, "empty owner set for a"));

  draft.owners = {{"a", {"1"}}};
  draft.preferences = {{"1", {"a", "a"}}, {"2", {"a"}}};
  v = Economy::validate(draft);
  CHECK(has_error(v, "duplicate object in ranking"));

  draft.preferences = {{"1", {"a"}}, {"2", {"zzz"}}};
  v = Economy::validate(draft);
  CHECK(has_error(v, "unknown identifier: zzz"));

  draft.preferences = {{"1", {"a"}}};
  v = Economy::validate(draft);
  CHECK(has_error(v, "missing preference for 2"));

  draft.objects = {"2"};
  v = Economy::validate(draft);
  CHECK(has_error(v, "overlap"));
}

TEST_CASE("endowments of coalitions") {
  Economy e = load_case("case01");
  CHECK(endowments(e, make_coalition(e, {"1"})) == make_objects(e, {"a", "b"}));
  CHECK(endowments(e, make_coalition(e, {"2", "3"})) == 0);
  CHECK(endowments(e, Coalition(e.all_agents())) == e.all_objects());
}

TEST_CASE("preference comparisons") {
  Economy e = load_case("case01");
  CHECK(compare_labels(e, "1", "a", "b") > 0);
  CHECK(compare_labels(e, "1", "", "") == 0);
  CHECK(compare_labels(e, "2", "b", "") > 0);
  CHECK_THROWS_AS(compare_labels(e, "9", "a", "b"), std::invalid_argument);
  CHECK_THROWS_AS(compare_labels(e, "1", "zzz", "b"), std::invalid_argument);

  Economy star = load_case("case10_star");
  CHECK(compare_labels(star, "5", "", "d") > 0);  // null above every real object
}

TEST_CASE("endowment operator is monotone and matches private ownership") {
  GeneratorConfig cfg;
  cfg.seed = 11;
  for (int trial = 0; trial < 50; ++trial) {
    Economy e = generate_economy(cfg, trial);
    for (Mask32 c2 = 1; c2 <= e.all_agents(); ++c2) {
      Mask32 c1 = c2 & (c2 >> 1 | 1u);  // arbitrary subset of c2
      if (c1 == 0) c1 = c2;
      CHECK(mask_subset(endowments(e, c1 & c2), endowments(e, c2)));
    }
    for (int i = 0; i < e.num_agents(); ++i) {
      Mask32 priv = 0;
      for (int o = 0; o < e.num_objects(); ++o)
        if (e.owners(o) == bit(i)) priv |= bit(o);
      CHECK(endowments(e, bit(i)) == priv);
    }
  }
}

TEST_CASE("strict order trichotomy") {
  GeneratorConfig cfg;
  cfg.seed = 12;
  cfg.acceptability = 0.5;
  for (int trial = 0; trial < 30; ++trial) {
    Economy e = generate_economy(cfg, trial);
    for (int i = 0; i < e.num_agents(); ++i) {
      for (std::int8_t x = kNullObject; x < e.num_objects(); ++x) {
        for (std::int8_t y = kNullObject; y < e.num_objects(); ++y) {
          int xy = e.compare(i, x, y);
          int yx = e.compare(i, y, x);
          if (x == y) {
            CHECK(xy == 0);
          } else {
            CHECK(xy != 0);
            CHECK(xy == -yx);
          }
        }
      }
    }
  }
}

TEST_CASE("fingerprint is stable and distinguishes economies") {
  Economy a = load_case("case01");
  Economy b = load_case("case01");
  CHECK(fingerprint(a) == fingerprint(b));
  CHECK(fingerprint(a) != fingerprint(load_case("case04")));
}

TEST_CASE("allocations reject double assignment") {
  CHECK_THROWS_AS(Allocation({0, 0, kNullObject}), std::logic_error);
  Allocation ok({kNullObject, kNullObject});
  CHECK(ok[0] == kNullObject);
}

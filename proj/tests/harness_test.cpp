#include <algorithm>

#include "doctest.h"
#include "endow/generator.hpp"
#include "endow/properties.hpp"
#include "endow/special.hpp"

using namespace endow;

TEST_CASE("generation is deterministic in (config, trial)") {
  GeneratorConfig cfg;
  cfg.seed = 81;
  for (int trial = 0; trial < 10; ++trial)
    CHECK(generate_economy(cfg, trial) == generate_economy(cfg, trial));
  CHECK(!(generate_economy(cfg, 0) == generate_economy(cfg, 1)));
}

TEST_CASE("class-constrained generation honors the constraint") {
  GeneratorConfig cfg;
  cfg.seed = 82;

  cfg.ownership = OwnershipClass::PublicOwnership;
  for (int trial = 0; trial < 10; ++trial) {
    Economy e = generate_economy(cfg, trial);
    for (int o = 0; o < e.num_objects(); ++o) CHECK(e.owners(o) == e.all_agents());
  }

  cfg.ownership = OwnershipClass::PrivateOwnership;
  for (int trial = 0; trial < 10; ++trial)
    CHECK(classify(generate_economy(cfg, trial)).private_ownership);

  cfg.ownership = OwnershipClass::Het;
  for (int trial = 0; trial < 10; ++trial) CHECK(classify(generate_economy(cfg, trial)).het);

  cfg.ownership = OwnershipClass::NoOverlapping;
  for (int trial = 0; trial < 10; ++trial)
    CHECK(classify(generate_economy(cfg, trial)).no_overlapping_ownership);

  cfg.ownership = OwnershipClass::NoRedundant;
  cfg.acceptability = 1.0;
  for (int trial = 0; trial < 10; ++trial)
    CHECK(classify(generate_economy(cfg, trial)).no_redundant_ownership);
}

TEST_CASE("verify runs clean on small sweeps") {
  GeneratorConfig cfg;
  cfg.seed = 83;
  cfg.trials = 25;
  for (const char* id : {"thm1", "thm2", "thm3", "fig1-chain", "pe-nonempty"}) {
    PropertyVerdict v = verify_property(id, cfg);
    INFO(id, ": ", v.failures.empty() ? "" : v.failures.front().detail);
    CHECK(v.passed());
    CHECK(v.trials == 25);
  }
}

TEST_CASE("verify rejects unknown property ids") {
  GeneratorConfig cfg;
  CHECK_THROWS_AS(verify_property("nosuch", cfg), parse_error);
}

TEST_CASE("property id registry") {
  auto ids = property_ids();
  for (const char* id : {"thm1", "thm2", "thm3", "fig1-chain", "effective-superset", "prop1",
                         "prop2", "prop3", "prop4", "prop5", "lemma1", "lemma2", "het-corollary",
                         "pe-nonempty", "golden"})
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
}

TEST_CASE("shrinker finds a minimal failing economy and stays sound") {
  GeneratorConfig cfg;
  cfg.seed = 84;
  cfg.min_agents = 4;
  cfg.max_agents = 4;
  cfg.min_objects = 3;
  cfg.max_objects = 3;
  Economy big = generate_economy(cfg, 0);
  auto fails = [](const Economy& e) { return e.num_agents() >= 3; };
  auto any = [](const Economy&) { return true; };
  Economy shrunk = shrink_economy(big, fails, any);
  CHECK(fails(shrunk));
  CHECK(shrunk.num_agents() == 3);
  CHECK(shrunk.num_objects() == 0);
}

TEST_CASE("golden corpus assertions") {
  PropertyVerdict v = golden_cases(ENDOW_CORPUS_DIR);
  CHECK(v.trials > 50);
  // The case09 exclusion assertion cannot hold: under the order 2,4,1,3 the
  // step rules force the trading cycle 1 -> a -> 4 -> c -> 1, so the contested
  // allocation is reached. The acceptance suite reports that assertion red.
  // Everything else must hold.
  for (const PropertyFailure& f : v.failures) {
    INFO(f.detail);
    CHECK(f.detail.find("case09") != std::string::npos);
    CHECK(f.detail.find("mechanism-excludes") != std::string::npos);
  }
  CHECK(v.failures.size() == 1);
}

#include "doctest.h"
#include "endow/blocking.hpp"
#include "endow/generator.hpp"
#include "fixtures.hpp"

using namespace endow;
using test::load_case;
using test::make_alloc;
using test::make_coalition;
using test::make_objects;

TEST_CASE("self-enforcing coalitions") {
  Economy pub = load_case("case03");
  Allocation sigma = make_alloc(pub, {{"1", "a"}, {"2", "c"}, {"3", "b"}});
  CHECK(is_self_enforcing(pub, make_coalition(pub, {"1"}), sigma.view()));

  Economy co = load_case("case04");
  CHECK(is_self_enforcing(co, make_coalition(co, {"1"}), Allocation::all_null(3).view()));

  Economy nine = load_case("case09");
  Allocation mu = make_alloc(nine, {{"1", "a"}, {"2", "b"}, {"4", "c"}});
  CHECK(!is_self_enforcing(nine, make_coalition(nine, {"1", "2"}), mu.view()));
}

TEST_CASE("minimal self-enforcing coalitions") {
  Economy e = load_case("case06");
  Allocation mu = make_alloc(e, {{"1", "a"}, {"2", "b"}});
  CHECK(is_minimal_self_enforcing(e, make_coalition(e, {"1", "2"}), mu.view()));
  CHECK(!is_self_enforcing(e, make_coalition(e, {"1"}), mu.view()));
  CHECK(!is_minimal_self_enforcing(e, make_coalition(e, {"1"}), mu.view()));
  // Singletons have no sub-coalitions.
  CHECK(is_minimal_self_enforcing(e, make_coalition(e, {"3"}), Allocation::all_null(3).view()));
}

TEST_CASE("control closure on fixtures") {
  Economy e = load_case("case05");
  Allocation mu = make_alloc(e, {{"1", "b"}, {"3", "a"}});
  CHECK(control_closure(e, make_coalition(e, {"1", "2"}), mu.view()) ==
        make_objects(e, {"a", "b"}));
  CHECK(control_closure(e, make_coalition(e, {"1"}), mu.view()) == 0);

  Economy nine = load_case("case09");
  Allocation mu9 = make_alloc(nine, {{"1", "a"}, {"2", "b"}, {"4", "c"}});
  CHECK(control_closure(nine, make_coalition(nine, {"1", "3", "4"}), mu9.view()) ==
        make_objects(nine, {"a"}));
}

TEST_CASE("control closure contains endowments and is monotone") {
  GeneratorConfig cfg;
  cfg.seed = 41;
  for (int trial = 0; trial < 30; ++trial) {
    Economy e = generate_economy(cfg, trial);
    AllocationSet all = enumerate_allocations(e);
    int m_idx = trial % all.size();
    AllocView m = all.view(m_idx);
    for (Mask32 c = 1; c <= e.all_agents(); ++c) {
      Mask32 closure = control_closure(e, Coalition(c), m);
      CHECK(mask_subset(endowments(e, c), closure));
      for (Mask32 bigger = c; bigger <= e.all_agents(); bigger = (bigger + 1) | c)
        CHECK(mask_subset(closure, control_closure(e, Coalition(bigger), m)));
    }
  }
}

TEST_CASE("weak and strong blocking on the monopoly fixture") {
  Economy e = load_case("case01");
  Allocation sigma = make_alloc(e, {{"1", "a"}, {"2", "b"}});
  Allocation delta = make_alloc(e, {{"1", "a"}, {"3", "b"}});
  CHECK(weak_block(e, sigma.view(), make_coalition(e, {"1", "3"}), delta.view()));
  CHECK(!strong_block(e, sigma.view(), make_coalition(e, {"1", "3"}), delta.view()));

  Allocation without_a = make_alloc(e, {{"1", "b"}, {"2", "a"}});
  Allocation grab = make_alloc(e, {{"1", "a"}});
  CHECK(strong_block(e, without_a.view(), make_coalition(e, {"1"}), grab.view()));

  // No strict improvement on the coalition means no blocking.
  CHECK(!weak_block(e, sigma.view(), make_coalition(e, {"1"}), sigma.view()));
}

TEST_CASE("rectification blocking on fixtures") {
  Economy five = load_case("case02");
  Allocation mu = make_alloc(five, {{"1", "b"}, {"2", "a"}, {"3", "c"}, {"4", "d"}, {"5", "e"}});
  Allocation sigma = make_alloc(five, {{"1", "b"}, {"2", "c"}, {"3", "e"}, {"4", "d"}, {"5", "a"}});
  CHECK(rectification_block(five, mu.view(), make_coalition(five, {"1", "2", "3", "4"}), sigma.view()));

  Economy pub = load_case("case03");
  Allocation s3 = make_alloc(pub, {{"1", "a"}, {"2", "c"}, {"3", "b"}});
  Allocation d3 = make_alloc(pub, {{"1", "a"}, {"2", "c"}, {"4", "b"}});
  CHECK(weak_block(pub, s3.view(), make_coalition(pub, {"1", "4"}), d3.view()));
  CHECK(!rectification_block(pub, s3.view(), make_coalition(pub, {"1", "4"}), d3.view()));

  Economy co = load_case("case04");
  Allocation delta = make_alloc(co, {{"3", "a"}});
  Allocation mu4 = make_alloc(co, {{"1", "a"}});
  CHECK(rectification_block(co, delta.view(), make_coalition(co, {"1", "2"}), mu4.view()));
}

TEST_CASE("exclusion blocking on fixtures") {
  Economy het = load_case("case10");
  Allocation mu = make_alloc(het, {{"1", "a"}, {"2", "c"}, {"3", "b"}, {"4", "d"}});
  Allocation sigma1 = make_alloc(het, {{"1", "b"}, {"2", "d"}, {"3", "c"}, {"4", "a"}});
  CHECK(exclusion_block(het, mu.view(), make_coalition(het, {"1", "2", "4"}), sigma1.view()));

  Economy co = load_case("case04");
  Allocation delta = make_alloc(co, {{"3", "a"}});
  AllocationSet all = enumerate_allocations(co);
  for (int s = 0; s < all.size(); ++s) {
    if (alloc_equal(all.view(s), delta.view())) continue;
    CHECK(!exclusion_block(co, delta.view(), make_coalition(co, {"1", "2"}), all.view(s)));
  }
}

TEST_CASE("refined exclusion blocking variants") {
  Economy e = load_case("case06");
  Allocation delta = make_alloc(e, {{"1", "a"}, {"3", "b"}});
  Allocation mu = make_alloc(e, {{"1", "a"}, {"2", "b"}});
  Coalition pair = make_coalition(e, {"1", "2"});
  CHECK(refined_exclusion_block(e, delta.view(), pair, mu.view(), RefinedVariant::Standard));
  CHECK(!refined_exclusion_block(e, delta.view(), pair, mu.view(), RefinedVariant::ThreePrime));

  Economy five = load_case("case05");
  Allocation mu5 = make_alloc(five, {{"1", "b"}, {"3", "a"}});
  Allocation d1 = make_alloc(five, {{"1", "b"}, {"2", "a"}});
  Coalition c12 = make_coalition(five, {"1", "2"});
  CHECK(!refined_exclusion_block(five, mu5.view(), c12, d1.view(), RefinedVariant::Standard));
  CHECK(refined_exclusion_block(five, mu5.view(), c12, d1.view(),
                                RefinedVariant::DropSelfEnforcing));
}

TEST_CASE("effective blocking") {
  Economy e = load_case("case01");
  Allocation sigma = make_alloc(e, {{"1", "a"}, {"2", "b"}});
  Allocation delta = make_alloc(e, {{"1", "a"}, {"3", "b"}});
  Coalition c13 = make_coalition(e, {"1", "3"});
  CHECK(weak_block(e, sigma.view(), c13, delta.view()));
  CHECK(!effective_block(e, sigma.view(), c13, delta.view()));

  // The grand coalition escape: a Pareto improvement always effective-blocks.
  Allocation mu = make_alloc(e, {{"1", "a"}});
  CHECK(effective_block(e, mu.view(), Coalition(e.all_agents()), sigma.view()));
}

TEST_CASE("rectification-star blocking") {
  Economy het = load_case("case10");
  Allocation mu = make_alloc(het, {{"1", "a"}, {"2", "c"}, {"3", "b"}, {"4", "d"}});
  Allocation sigma1 = make_alloc(het, {{"1", "b"}, {"2", "d"}, {"3", "c"}, {"4", "a"}});
  CHECK(rectification_star_block(het, mu.view(), make_coalition(het, {"1", "2", "4"}), sigma1.view()));

  Allocation grab_d = make_alloc(het, {{"1", "a"}, {"2", "d"}, {"3", "b"}});
  CHECK(!rectification_star_block(het, mu.view(), make_coalition(het, {"2"}), grab_d.view()));

  Economy not_pp = load_case("case05");
  Allocation any = Allocation::all_null(3);
  Allocation other = make_alloc(not_pp, {{"3", "a"}});
  CHECK_THROWS_AS(
      rectification_star_block(not_pp, any.view(), make_coalition(not_pp, {"3"}), other.view()),
      class_error);
}

TEST_CASE("weak blocking implies rectification-star blocking") {
  GeneratorConfig cfg;
  cfg.seed = 44;
  cfg.ownership = OwnershipClass::PrivatePublic;
  for (int trial = 0; trial < 8; ++trial) {
    Economy e = generate_economy(cfg, trial);
    AllocationSet all = enumerate_allocations(e);
    for (int m = 0; m < all.size(); ++m) {
      for (Mask32 c = 1; c <= e.all_agents(); ++c) {
        for (int s = 0; s < all.size(); ++s) {
          if (s == m) continue;
          if (weak_block(e, all.view(m), Coalition(c), all.view(s)))
            CHECK(rectification_star_block(e, all.view(m), Coalition(c), all.view(s)));
        }
      }
    }
  }
}

TEST_CASE("blocking implication chain") {
  GeneratorConfig cfg;
  cfg.seed = 42;
  cfg.max_agents = 4;
  cfg.max_objects = 4;
  for (int trial = 0; trial < 12; ++trial) {
    Economy e = generate_economy(cfg, trial);
    AllocationSet all = enumerate_allocations(e);
    for (int m = 0; m < all.size(); ++m) {
      for (Mask32 c = 1; c <= e.all_agents(); ++c) {
        Coalition coalition(c);
        for (int s = 0; s < all.size(); ++s) {
          if (s == m) continue;
          AllocView mv = all.view(m);
          AllocView sv = all.view(s);
          if (strong_block(e, mv, coalition, sv))
            CHECK(rectification_block(e, mv, coalition, sv));
          if (rectification_block(e, mv, coalition, sv)) CHECK(weak_block(e, mv, coalition, sv));
          if (effective_block(e, mv, coalition, sv))
            CHECK(rectification_block(e, mv, coalition, sv));
          if (exclusion_block(e, mv, coalition, sv))
            CHECK(refined_exclusion_block(e, mv, coalition, sv, RefinedVariant::Standard));
          if (refined_exclusion_block(e, mv, coalition, sv, RefinedVariant::ThreePrime))
            CHECK(refined_exclusion_block(e, mv, coalition, sv, RefinedVariant::Standard));
        }
      }
    }
  }
}

TEST_CASE("grand coalition blocks every dominated allocation") {
  GeneratorConfig cfg;
  cfg.seed = 43;
  for (int trial = 0; trial < 15; ++trial) {
    Economy e = generate_economy(cfg, trial);
    AllocationSet all = enumerate_allocations(e);
    for (int m = 0; m < all.size(); ++m) {
      for (int s = 0; s < all.size(); ++s) {
        if (s == m || !pareto_dominates(e, all.view(s), all.view(m))) continue;
        CHECK(rectification_block(e, all.view(m), Coalition(e.all_agents()), all.view(s)));
        Mask32 improved = 0;
        for (int i = 0; i < e.num_agents(); ++i)
          if (e.compare(i, all.view(s)[static_cast<size_t>(i)],
                        all.view(m)[static_cast<size_t>(i)]) > 0)
            improved |= bit(i);
        REQUIRE(improved != 0);
        CHECK(exclusion_block(e, all.view(m), Coalition(improved), all.view(s)));
      }
    }
  }
}

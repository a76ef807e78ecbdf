#include <algorithm>

#include "doctest.h"
#include "endow/generator.hpp"
#include "endow/json_io.hpp"
#include "endow/mechanism.hpp"
#include "endow/solvers.hpp"
#include "fixtures.hpp"

using namespace endow;
using test::load_case;
using test::make_alloc;

TEST_CASE("sharing ownership rescues the trade") {
  Economy e = load_case("case07");
  std::vector<int> order = order_from_labels(e, {"4", "2", "3", "1"});

  MechanismRun with_sharing = run_mechanism(e, order);
  CHECK(with_sharing.allocation ==
        make_alloc(e, {{"1", "c"}, {"2", "a"}, {"3", "b"}, {"4", "d"}}));

  // After the first cycle clears, the co-owners left behind pick up the
  // leaver's endowment.
  int b = *e.object_index("b");
  int a1 = *e.agent_index("1");
  int a3 = *e.agent_index("3");
  bool granted_1 = false, granted_3 = false;
  for (const TraceStep& step : with_sharing.trace)
    for (auto [agent, object] : step.grants) {
      if (agent == a1 && object == b) granted_1 = true;
      if (agent == a3 && object == b) granted_3 = true;
    }
  CHECK(granted_1);
  CHECK(granted_3);

  MechanismRun without = run_mechanism(e, order, MechanismOptions{.sharing = false});
  CHECK(without.allocation == make_alloc(e, {{"1", "c"}, {"2", "a"}, {"3", "d"}, {"4", "b"}}));
}

TEST_CASE("single owner takes her favorite in one cycle") {
  EconomyDraft d;
  d.agents = {"1"};
  d.objects = {"a"};
  d.owners = {{"a", {"1"}}};
  d.preferences = {{"1", {"a"}}};
  Economy e = *Economy::validate(d).economy;
  std::vector<int> order = {0};
  MechanismRun run = run_mechanism(e, order);
  CHECK(run.allocation == make_alloc(e, {{"1", "a"}}));
  REQUIRE(run.trace.size() == 1);
  CHECK(run.trace[0].action == TraceStep::Action::Cycle);
}

TEST_CASE("agents demanding nothing leave with the null object immediately") {
  Economy e = load_case("case10_star");
  std::vector<int> order = order_from_labels(e, {"5", "1", "2", "3", "4"});
  MechanismRun run = run_mechanism(e, order);
  REQUIRE(!run.trace.empty());
  CHECK(run.trace[0].action == TraceStep::Action::AcquireNull);
  CHECK(run.trace[0].agent == *e.agent_index("5"));
  CHECK(run.allocation[*e.agent_index("5")] == kNullObject);
}

TEST_CASE("all-orders outcomes on fixtures") {
  Economy het = load_case("case10");
  AllocationSet outcomes = mechanism_outcomes(het);
  REQUIRE(outcomes.size() == 2);
  CHECK(outcomes.contains(make_alloc(het, {{"1", "b"}, {"2", "d"}, {"3", "c"}, {"4", "a"}}).view()));
  CHECK(outcomes.contains(make_alloc(het, {{"1", "a"}, {"2", "d"}, {"3", "b"}, {"4", "c"}}).view()));

  // Every outcome sits inside both cores, here checked on a fixture whose
  // outcome set is larger than the examples above.
  Economy nine = load_case("case09");
  AllocationSet nine_outcomes = mechanism_outcomes(nine);
  AllocationSet all9 = enumerate_allocations(nine);
  std::vector<char> rect = solution_mask(nine, all9, Solution::RectifiedCore);
  std::vector<char> refined = solution_mask(nine, all9, Solution::RefinedExclusionCore);
  for (int i = 0; i < nine_outcomes.size(); ++i) {
    auto idx = all9.index_of(nine_outcomes.view(i));
    REQUIRE(idx.has_value());
    CHECK(rect[static_cast<size_t>(*idx)]);
    CHECK(refined[static_cast<size_t>(*idx)]);
  }
}

TEST_CASE("public ownership reduces to serial dictatorship") {
  GeneratorConfig cfg;
  cfg.seed = 61;
  cfg.ownership = OwnershipClass::PublicOwnership;
  for (int trial = 0; trial < 8; ++trial) {
    Economy e = generate_economy(cfg, trial);
    CHECK(mechanism_outcomes(e) == pareto_efficient_set(e));
  }
}

TEST_CASE("identical runs produce identical traces") {
  Economy e = load_case("case07");
  std::vector<int> order = order_from_labels(e, {"3", "1", "4", "2"});
  MechanismRun a = run_mechanism(e, order);
  MechanismRun b = run_mechanism(e, order);
  REQUIRE(a.trace.size() == b.trace.size());
  for (size_t i = 0; i < a.trace.size(); ++i)
    CHECK(trace_step_to_json(e, a.trace[i]) == trace_step_to_json(e, b.trace[i]));
}

TEST_CASE("traces replay to the final allocation and stay within the step bound") {
  GeneratorConfig cfg;
  cfg.seed = 62;
  for (int trial = 0; trial < 40; ++trial) {
    Economy e = generate_economy(cfg, trial);
    std::vector<int> order(static_cast<size_t>(e.num_agents()));
    for (int i = 0; i < e.num_agents(); ++i) order[static_cast<size_t>(i)] = i;
    // Rotate for variety across trials.
    std::rotate(order.begin(), order.begin() + trial % e.num_agents(), order.end());
    MechanismRun run = run_mechanism(e, order);
    CHECK(replay_trace(e, run.trace) == run.allocation);
    CHECK(run.steps <= e.num_agents() * (e.num_agents() + e.num_objects()));
  }
}

TEST_CASE("order validation") {
  Economy e = load_case("case01");
  CHECK_THROWS_AS(order_from_labels(e, {"1", "1", "2"}), parse_error);
  CHECK_THROWS_AS(order_from_labels(e, {"1", "2"}), parse_error);
  CHECK_THROWS_AS(order_from_labels(e, {"1", "2", "9"}), parse_error);
  std::vector<int> bad = {0, 0, 1};
  CHECK_THROWS_AS(run_mechanism(e, bad), std::invalid_argument);
}

TEST_CASE("all-orders guard") {
  EconomyDraft d;
  for (int i = 0; i < 8; ++i) {
    d.agents.push_back(std::to_string(i + 1));
    d.preferences.emplace_back(std::to_string(i + 1), std::vector<std::string>{});
  }
  Economy e = *Economy::validate(d).economy;
  CHECK_THROWS_AS(mechanism_outcomes(e), guard_error);
}

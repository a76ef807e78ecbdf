#include <algorithm>
#include <filesystem>
#include <optional>
#include <string>

#include "endow/blocking.hpp"
#include "endow/json_io.hpp"
#include "endow/mechanism.hpp"
#include "endow/properties.hpp"
#include "endow/solvers.hpp"
#include "endow/special.hpp"

namespace endow {

namespace {

namespace fs = std::filesystem;

Solution parse_solution(const std::string& name) {
  auto s = solution_from_string(name);
  if (!s) throw parse_error("unknown solution concept in assertion: " + name);
  return *s;
}

AllocationSet alloc_set_from_json(const Economy& e, const Json& arr) {
  AllocationSet set(e.num_agents(), fingerprint(e));
  for (const Json& doc : arr) set.add(allocation_from_json(e, doc).view());
  set.sort_unique();
  return set;
}

std::optional<std::string> check_set_equals(const Economy& e, const AllocationSet& got,
                                            const AllocationSet& want) {
  for (int i = 0; i < want.size(); ++i)
    if (!got.contains(want.view(i)))
      return "missing " + alloc_to_string(e, want.view(i));
  for (int i = 0; i < got.size(); ++i)
    if (!want.contains(got.view(i)))
      return "unexpected " + alloc_to_string(e, got.view(i));
  return std::nullopt;
}

Mask32 object_mask_from_json(const Economy& e, const Json& arr) {
  Mask32 m = 0;
  for (const Json& label : arr) {
    auto oi = e.object_index(label.get<std::string>());
    if (!oi) throw parse_error("unknown object in assertion: " + label.get<std::string>());
    m |= bit(*oi);
  }
  return m;
}

std::string object_mask_to_string(const Economy& e, Mask32 m) {
  std::string out = "{";
  bool first = true;
  for (int o : mask_members(m)) {
    if (!first) out += ",";
    first = false;
    out += e.object_label(o);
  }
  return out + "}";
}

// Evaluates one sidecar assertion; nullopt means it held.
std::optional<std::string> evaluate(const Economy& e, const Json& a, const fs::path& corpus) {
  const std::string check = a.at("check").get<std::string>();
  const Guards guards;

  if (check == "solution-equals" || check == "solution-contains" ||
      check == "solution-excludes" || check == "solution-empty") {
    Solution sol = parse_solution(a.at("concept").get<std::string>());
    AllocationSet got = solution_set(e, sol, guards);
    if (check == "solution-empty") {
      if (!got.empty()) return "expected empty set, got " + std::to_string(got.size()) + " members";
      return std::nullopt;
    }
    if (check == "solution-equals")
      return check_set_equals(e, got, alloc_set_from_json(e, a.at("allocations")));
    for (const Json& doc : a.at("allocations")) {
      Allocation alloc = allocation_from_json(e, doc);
      bool member = got.contains(alloc.view());
      if (check == "solution-contains" && !member)
        return "missing " + alloc_to_string(e, alloc.view());
      if (check == "solution-excludes" && member)
        return "unexpected member " + alloc_to_string(e, alloc.view());
    }
    return std::nullopt;
  }

  if (check == "allocation-count") {
    AllocationSet all = enumerate_allocations(e, guards);
    long long want = a.at("count").get<long long>();
    if (all.size() != want)
      return "expected " + std::to_string(want) + " allocations, got " + std::to_string(all.size());
    return std::nullopt;
  }

  if (check == "blocks") {
    const std::string concept_name = a.at("concept").get<std::string>();
    Allocation blocked = allocation_from_json(e, a.at("blocked"));
    Allocation via = allocation_from_json(e, a.at("via"));
    Coalition coalition = coalition_from_json(e, a.at("coalition"));
    bool expect = a.at("expect").get<bool>();
    bool got;
    if (concept_name == "refined-exclusion-weakened")
      got = refined_exclusion_block(e, blocked.view(), coalition, via.view(),
                                    RefinedVariant::DropSelfEnforcing);
    else if (auto bc = blocking_from_string(concept_name))
      got = blocks(e, *bc, blocked.view(), coalition, via.view());
    else
      throw parse_error("unknown blocking concept in assertion: " + concept_name);
    if (got != expect)
      return concept_name + " blocking returned " + (got ? "true" : "false") + ", expected " +
             (expect ? "true" : "false");
    return std::nullopt;
  }

  if (check == "self-enforcing" || check == "minimal-self-enforcing") {
    Coalition coalition = coalition_from_json(e, a.at("coalition"));
    Allocation alloc = allocation_from_json(e, a.at("allocation"));
    bool expect = a.at("expect").get<bool>();
    bool got = check == "self-enforcing"
                   ? is_self_enforcing(e, coalition, alloc.view())
                   : is_minimal_self_enforcing(e, coalition, alloc.view());
    if (got != expect) return check + std::string(" returned ") + (got ? "true" : "false");
    return std::nullopt;
  }

  if (check == "control-closure") {
    Coalition coalition = coalition_from_json(e, a.at("coalition"));
    Allocation alloc = allocation_from_json(e, a.at("allocation"));
    Mask32 want = object_mask_from_json(e, a.at("objects"));
    Mask32 got = control_closure(e, coalition, alloc.view());
    if (got != want)
      return "control closure is " + object_mask_to_string(e, got) + ", expected " +
             object_mask_to_string(e, want);
    return std::nullopt;
  }

  if (check == "endowments") {
    Coalition coalition = coalition_from_json(e, a.at("coalition"));
    Mask32 want = object_mask_from_json(e, a.at("objects"));
    Mask32 got = endowments(e, coalition);
    if (got != want)
      return "endowments are " + object_mask_to_string(e, got) + ", expected " +
             object_mask_to_string(e, want);
    return std::nullopt;
  }

  if (check == "dominates") {
    Allocation dominant = allocation_from_json(e, a.at("dominant"));
    Allocation dominated = allocation_from_json(e, a.at("dominated"));
    bool expect = a.at("expect").get<bool>();
    bool got = pareto_dominates(e, dominant.view(), dominated.view());
    if (got != expect) return std::string("dominance returned ") + (got ? "true" : "false");
    return std::nullopt;
  }

  if (check == "prefers") {
    int cmp = compare_labels(e, a.at("agent").get<std::string>(),
                             a.at("better").get<std::string>(), a.at("worse").get<std::string>());
    if (cmp <= 0) return "preference comparison not strict in the expected direction";
    return std::nullopt;
  }

  if (check == "mechanism-run") {
    MechanismOptions options;
    if (a.contains("sharing")) options.sharing = a.at("sharing").get<bool>();
    std::vector<int> order = order_from_labels(e, a.at("order").get<std::vector<std::string>>());
    MechanismRun run = run_mechanism(e, order, options);
    Allocation want = allocation_from_json(e, a.at("result"));
    if (!(run.allocation == want))
      return "mechanism produced " + alloc_to_string(e, run.allocation.view()) + ", expected " +
             alloc_to_string(e, want.view());
    return std::nullopt;
  }

  if (check == "mechanism-grant") {
    std::vector<int> order = order_from_labels(e, a.at("order").get<std::vector<std::string>>());
    MechanismRun run = run_mechanism(e, order, {});
    auto oi = e.object_index(a.at("object").get<std::string>());
    if (!oi) throw parse_error("unknown object in assertion");
    for (const Json& agent : a.at("agents")) {
      auto ai = e.agent_index(agent.get<std::string>());
      if (!ai) throw parse_error("unknown agent in assertion");
      bool found = false;
      for (const TraceStep& step : run.trace)
        for (auto [grantee, object] : step.grants)
          if (grantee == *ai && object == *oi) found = true;
      if (!found)
        return "no shared-ownership grant of " + a.at("object").get<std::string>() + " to " +
               agent.get<std::string>() + " in the trace";
    }
    return std::nullopt;
  }

  if (check == "mechanism-outcomes") {
    AllocationSet got = mechanism_outcomes(e, {}, guards);
    return check_set_equals(e, got, alloc_set_from_json(e, a.at("allocations")));
  }

  if (check == "mechanism-excludes") {
    AllocationSet got = mechanism_outcomes(e, {}, guards);
    Allocation alloc = allocation_from_json(e, a.at("allocation"));
    if (got.contains(alloc.view()))
      return "mechanism reaches " + alloc_to_string(e, alloc.view());
    return std::nullopt;
  }

  if (check == "classify") {
    Json got = class_to_json(classify(e));
    for (const auto& [flag, expected] : a.at("flags").items()) {
      if (!got.contains(flag)) throw parse_error("unknown classification flag: " + flag);
      if (got.at(flag) != expected)
        return "flag " + flag + " is " + got.at(flag).dump() + ", expected " + expected.dump();
    }
    return std::nullopt;
  }

  if (check == "consistency") {
    Solution sol = parse_solution(a.at("concept").get<std::string>());
    ConsistencyVerdict v = check_consistency(e, sol, guards);
    bool expect = a.at("equal").get<bool>();
    if (v.equal != expect)
      return std::string("consistency verdict is ") + (v.equal ? "equal" : "not equal");
    if (a.contains("only-in-base-contains")) {
      Allocation want = allocation_from_json(e, a.at("only-in-base-contains"));
      bool found = std::any_of(v.only_base.begin(), v.only_base.end(),
                               [&](const Allocation& x) { return x == want; });
      if (!found)
        return "expected witness " + alloc_to_string(e, want.view()) + " missing from base-only set";
    }
    return std::nullopt;
  }

  if (check == "augment-equals") {
    AugmentedEconomy aug = augment(e, a.at("star").get<std::string>());
    Economy want = load_economy_file((corpus / a.at("economy").get<std::string>()).string());
    if (!(aug.star == want)) return "augmented economy differs from " + a.at("economy").get<std::string>();
    return std::nullopt;
  }

  throw parse_error("unknown assertion check: " + check);
}

}  // namespace

PropertyVerdict golden_cases(const std::string& corpus_dir) {
  PropertyVerdict verdict{"golden", 0, 0, {}};
  fs::path corpus(corpus_dir);
  if (!fs::is_directory(corpus)) throw parse_error("corpus directory not found: " + corpus_dir);

  std::vector<fs::path> sidecars;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (entry.path().extension() == ".json" &&
        entry.path().stem().string().ends_with(".assert"))
      sidecars.push_back(entry.path());
  }
  std::sort(sidecars.begin(), sidecars.end());
  if (sidecars.empty()) throw parse_error("no assertion sidecars in " + corpus_dir);

  for (const fs::path& sidecar : sidecars) {
    Json doc = load_json_file(sidecar.string());
    const std::string case_name = doc.at("economy").get<std::string>();
    Economy economy = load_economy_file((corpus / case_name).string());
    int index = 0;
    for (const Json& assertion : doc.at("assertions")) {
      ++verdict.trials;
      std::optional<std::string> failure;
      try {
        failure = evaluate(economy, assertion, corpus);
      } catch (const std::exception& err) {
        failure = std::string("assertion error: ") + err.what();
      }
      if (failure) {
        verdict.failures.push_back(PropertyFailure{
            economy, sidecar.filename().string() + " #" + std::to_string(index) + " (" +
                         assertion.at("check").get<std::string>() + "): " + *failure});
      }
      ++index;
    }
  }
  return verdict;
}

}  // namespace endow

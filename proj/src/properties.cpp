#include "endow/properties.hpp"

#include <algorithm>
#include <map>

#include "endow/blocking.hpp"
#include "endow/errors.hpp"
#include "endow/mechanism.hpp"
#include "endow/parallel.hpp"
#include "endow/solvers.hpp"
#include "endow/special.hpp"

namespace endow {

namespace {

std::optional<std::string> included_or_witness(const Economy& e, const AllocationSet& all,
                                               const std::vector<char>& a,
                                               const std::vector<char>& b,
                                               const std::string& claim) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i])
      return claim + " fails at " + alloc_to_string(e, all.view(static_cast<int>(i)));
  return std::nullopt;
}

std::optional<std::string> equal_or_witness(const Economy& e, const AllocationSet& all,
                                            const std::vector<char>& a,
                                            const std::vector<char>& b,
                                            const std::string& claim) {
  if (auto w = included_or_witness(e, all, a, b, claim)) return w;
  return included_or_witness(e, all, b, a, claim);
}

using CheckFn = std::optional<std::string> (*)(const Economy&, const Guards&);

std::optional<std::string> check_thm1(const Economy& e, const Guards& g) {
  AllocationSet core = solution_set(e, Solution::RectifiedCore, g);
  if (core.empty()) return "rectified core is empty";
  return std::nullopt;
}

std::optional<std::string> check_thm2(const Economy& e, const Guards& g) {
  AllocationSet core = solution_set(e, Solution::RefinedExclusionCore, g);
  if (core.empty()) return "refined exclusion core is empty";
  return std::nullopt;
}

std::optional<std::string> check_thm3(const Economy& e, const Guards& g) {
  AllocationSet all = enumerate_allocations(e, g);
  std::vector<char> rectified = solution_mask(e, all, Solution::RectifiedCore, g);
  std::vector<char> refined = solution_mask(e, all, Solution::RefinedExclusionCore, g);
  AllocationSet outcomes = mechanism_outcomes(e, {}, g);
  for (int i = 0; i < outcomes.size(); ++i) {
    auto idx = all.index_of(outcomes.view(i));
    ENDOW_ASSERT(idx.has_value());
    if (!rectified[static_cast<size_t>(*idx)])
      return "mechanism outcome outside rectified core: " + alloc_to_string(e, outcomes.view(i));
    if (!refined[static_cast<size_t>(*idx)])
      return "mechanism outcome outside refined exclusion core: " +
             alloc_to_string(e, outcomes.view(i));
  }
  return std::nullopt;
}

std::optional<std::string> check_fig1_chain(const Economy& e, const Guards& g) {
  AllocationSet all = enumerate_allocations(e, g);
  auto mask = [&](Solution s) { return solution_mask(e, all, s, g); };
  std::vector<char> weak = mask(Solution::WeakCore);
  std::vector<char> strong = mask(Solution::StrongCore);
  std::vector<char> rectified = mask(Solution::RectifiedCore);
  std::vector<char> exclusion = mask(Solution::ExclusionCore);
  std::vector<char> refined = mask(Solution::RefinedExclusionCore);
  std::vector<char> effective = mask(Solution::EffectiveCore);
  std::vector<char> pe = mask(Solution::ParetoEfficient);
  std::vector<char> yrmh = mask(Solution::Yrmh);
  std::vector<char> weak_and_pe(weak.size());
  for (size_t i = 0; i < weak.size(); ++i) weak_and_pe[i] = weak[i] && pe[i];
  std::vector<char> rect_and_refined(weak.size());
  for (size_t i = 0; i < weak.size(); ++i) rect_and_refined[i] = rectified[i] && refined[i];

  if (auto w = included_or_witness(e, all, strong, rectified, "strong core <= rectified core")) return w;
  if (auto w = included_or_witness(e, all, rectified, weak_and_pe, "rectified core <= weak core and PE")) return w;
  if (auto w = included_or_witness(e, all, refined, exclusion, "refined EC <= exclusion core")) return w;
  if (auto w = included_or_witness(e, all, exclusion, weak_and_pe, "exclusion core <= weak core and PE")) return w;
  if (auto w = included_or_witness(e, all, yrmh, rect_and_refined, "mechanism outcomes <= rectified and refined EC")) return w;
  if (auto w = included_or_witness(e, all, rectified, effective, "rectified core <= effective core")) return w;
  return std::nullopt;
}

std::optional<std::string> check_effective_superset(const Economy& e, const Guards& g) {
  AllocationSet all = enumerate_allocations(e, g);
  std::vector<char> rectified = solution_mask(e, all, Solution::RectifiedCore, g);
  std::vector<char> effective = solution_mask(e, all, Solution::EffectiveCore, g);
  return included_or_witness(e, all, rectified, effective, "rectified core <= effective core");
}

std::optional<std::string> check_pe_nonempty(const Economy& e, const Guards& g) {
  if (pareto_efficient_set(e, g).empty()) return "Pareto efficient set is empty";
  return std::nullopt;
}

std::optional<std::string> check_prop1(const Economy& e, const Guards& g) {
  AllocationSet all = enumerate_allocations(e, g);
  std::vector<char> strong = solution_mask(e, all, Solution::StrongCore, g);
  std::vector<char> rectified = solution_mask(e, all, Solution::RectifiedCore, g);
  std::vector<char> yrmh = solution_mask(e, all, Solution::Yrmh, g);
  if (auto w = equal_or_witness(e, all, strong, rectified, "strong core == rectified core")) return w;
  return included_or_witness(e, all, yrmh, strong, "mechanism outcomes <= strong core");
}

std::optional<std::string> check_prop2(const Economy& e, const Guards& g) {
  AllocationSet all = enumerate_allocations(e, g);
  std::vector<char> yrmh = solution_mask(e, all, Solution::Yrmh, g);
  std::vector<char> strong = solution_mask(e, all, Solution::StrongCore, g);
  std::vector<char> rectified = solution_mask(e, all, Solution::RectifiedCore, g);
  std::vector<char> refined = solution_mask(e, all, Solution::RefinedExclusionCore, g);
  std::vector<char> exclusion = solution_mask(e, all, Solution::ExclusionCore, g);
  if (auto w = equal_or_witness(e, all, yrmh, strong, "mechanism outcomes == strong core")) return w;
  if (auto w = equal_or_witness(e, all, strong, rectified, "strong core == rectified core")) return w;
  if (auto w = equal_or_witness(e, all, rectified, refined, "rectified core == refined EC")) return w;
  return included_or_witness(e, all, refined, exclusion, "refined EC <= exclusion core");
}

std::optional<std::string> check_prop3(const Economy& e, const Guards& g) {
  AllocationSet all = enumerate_allocations(e, g);
  std::vector<char> yrmh = solution_mask(e, all, Solution::Yrmh, g);
  std::vector<char> rectified = solution_mask(e, all, Solution::RectifiedCore, g);
  std::vector<char> refined = solution_mask(e, all, Solution::RefinedExclusionCore, g);
  std::vector<char> exclusion = solution_mask(e, all, Solution::ExclusionCore, g);
  if (auto w = equal_or_witness(e, all, yrmh, rectified, "mechanism outcomes == rectified core")) return w;
  if (auto w = equal_or_witness(e, all, rectified, refined, "rectified core == refined EC")) return w;
  if (auto w = equal_or_witness(e, all, refined, exclusion, "refined EC == exclusion core")) return w;
  std::vector<char> strong = solution_mask(e, all, Solution::StrongCore, g);
  if (std::find(strong.begin(), strong.end(), 1) != strong.end()) {
    if (auto w = equal_or_witness(e, all, exclusion, strong,
                                  "exclusion core == nonempty strong core"))
      return w;
  }
  return std::nullopt;
}

std::optional<std::string> check_prop4(const Economy& e, const Guards& g) {
  AllocationSet all = enumerate_allocations(e, g);
  std::vector<char> pe = solution_mask(e, all, Solution::ParetoEfficient, g);
  for (Solution s : {Solution::Yrmh, Solution::StrongCore, Solution::RectifiedCore,
                     Solution::RefinedExclusionCore, Solution::ExclusionCore}) {
    std::vector<char> m = solution_mask(e, all, s, g);
    if (auto w = equal_or_witness(e, all, m, pe, std::string(to_string(s)) + " == PE")) return w;
  }
  return std::nullopt;
}

std::optional<std::string> check_prop5(const Economy& e, const Guards& g) {
  AllocationSet all = enumerate_allocations(e, g);
  std::vector<char> yrmh = solution_mask(e, all, Solution::Yrmh, g);
  std::vector<char> refined = solution_mask(e, all, Solution::RefinedExclusionCore, g);
  std::vector<char> exclusion = solution_mask(e, all, Solution::ExclusionCore, g);
  std::vector<char> rectified = solution_mask(e, all, Solution::RectifiedCore, g);
  if (auto w = equal_or_witness(e, all, yrmh, refined, "mechanism outcomes == refined EC")) return w;
  if (auto w = equal_or_witness(e, all, refined, exclusion, "refined EC == exclusion core")) return w;
  return included_or_witness(e, all, exclusion, rectified, "exclusion core <= rectified core");
}

std::optional<std::string> check_lemma1(const Economy& e, const Guards& g) {
  ConsistencyVerdict ec = check_consistency(e, Solution::ExclusionCore, g);
  if (!ec.equal) {
    std::string msg = "exclusion core not consistent";
    if (!ec.only_base.empty()) msg += "; base-only " + alloc_to_string(e, ec.only_base.front().view());
    if (!ec.only_restricted.empty())
      msg += "; restricted-only " + alloc_to_string(e, ec.only_restricted.front().view());
    return msg;
  }
  ConsistencyVerdict yr = check_consistency(e, Solution::Yrmh, g);
  if (!yr.equal) {
    std::string msg = "mechanism outcomes not consistent";
    if (!yr.only_base.empty()) msg += "; base-only " + alloc_to_string(e, yr.only_base.front().view());
    if (!yr.only_restricted.empty())
      msg += "; restricted-only " + alloc_to_string(e, yr.only_restricted.front().view());
    return msg;
  }
  return std::nullopt;
}

std::optional<std::string> check_lemma2(const Economy& e, const Guards& g) {
  AugmentedEconomy aug = augment(e);
  AllocationSet star_core = solution_set(aug.star, Solution::RectifiedCore, g);
  AllocationSet base_core = solution_set(e, Solution::RectifiedCore, g);
  for (int i = 0; i < star_core.size(); ++i) {
    Allocation restricted = restrict_allocation(aug, star_core.view(i));
    if (!base_core.contains(restricted.view()))
      return "restricted rectified core member missing from base rectified core: " +
             alloc_to_string(e, restricted.view());
  }
  return std::nullopt;
}

std::optional<std::string> check_het_corollary(const Economy& e, const Guards& g) {
  AllocationSet all = enumerate_allocations(e, g);
  std::vector<char> yrmh = solution_mask(e, all, Solution::Yrmh, g);
  std::vector<char> star = solution_mask(e, all, Solution::RectifiedCoreStar, g);
  std::vector<char> exclusion = solution_mask(e, all, Solution::ExclusionCore, g);
  if (auto w = equal_or_witness(e, all, yrmh, star, "mechanism outcomes == rectified core*")) return w;
  return equal_or_witness(e, all, star, exclusion, "rectified core* == exclusion core");
}

struct PropertySpec {
  CheckFn check;
  OwnershipClass required_class;
};

const std::map<std::string, PropertySpec>& registry() {
  static const std::map<std::string, PropertySpec> props = {
      {"thm1", {check_thm1, OwnershipClass::Any}},
      {"thm2", {check_thm2, OwnershipClass::Any}},
      {"thm3", {check_thm3, OwnershipClass::Any}},
      {"fig1-chain", {check_fig1_chain, OwnershipClass::Any}},
      {"effective-superset", {check_effective_superset, OwnershipClass::Any}},
      {"pe-nonempty", {check_pe_nonempty, OwnershipClass::Any}},
      {"prop1", {check_prop1, OwnershipClass::NoRedundant}},
      {"prop2", {check_prop2, OwnershipClass::NoOverlapping}},
      {"prop3", {check_prop3, OwnershipClass::PrivateOwnership}},
      {"prop4", {check_prop4, OwnershipClass::PublicOwnership}},
      {"prop5", {check_prop5, OwnershipClass::PrivatePublic}},
      {"lemma1", {check_lemma1, OwnershipClass::PrivatePublic}},
      {"lemma2", {check_lemma2, OwnershipClass::PrivatePublic}},
      {"het-corollary", {check_het_corollary, OwnershipClass::Het}},
  };
  return props;
}

std::optional<Economy> drop_object(const Economy& e, int object) {
  EconomyDraft d = e.to_draft();
  const std::string label = e.object_label(object);
  d.objects.erase(std::find(d.objects.begin(), d.objects.end(), label));
  std::erase_if(d.owners, [&](const auto& entry) { return entry.first == label; });
  for (auto& [agent, ranking] : d.preferences) std::erase(ranking, label);
  Validation v = Economy::validate(d);
  if (!v.ok()) return std::nullopt;
  return std::move(*v.economy);
}

std::optional<Economy> drop_agent(const Economy& e, int agent) {
  if (e.num_agents() <= 1) return std::nullopt;
  EconomyDraft d = e.to_draft();
  const std::string label = e.agent_label(agent);
  d.agents.erase(std::find(d.agents.begin(), d.agents.end(), label));
  std::erase_if(d.preferences, [&](const auto& entry) { return entry.first == label; });
  std::vector<std::string> orphaned;
  for (auto& [object, owner_list] : d.owners) {
    std::erase(owner_list, label);
    if (owner_list.empty()) orphaned.push_back(object);
  }
  for (const std::string& object : orphaned) {
    d.objects.erase(std::find(d.objects.begin(), d.objects.end(), object));
    std::erase_if(d.owners, [&](const auto& entry) { return entry.first == object; });
    for (auto& [a, ranking] : d.preferences) std::erase(ranking, object);
  }
  Validation v = Economy::validate(d);
  if (!v.ok()) return std::nullopt;
  return std::move(*v.economy);
}

}  // namespace

Economy shrink_economy(Economy e, const std::function<bool(const Economy&)>& fails,
                       const std::function<bool(const Economy&)>& admissible) {
  bool reduced = true;
  while (reduced) {
    reduced = false;
    for (int o = 0; o < e.num_objects() && !reduced; ++o) {
      if (auto smaller = drop_object(e, o); smaller && admissible(*smaller) && fails(*smaller)) {
        e = std::move(*smaller);
        reduced = true;
      }
    }
    for (int a = 0; a < e.num_agents() && !reduced; ++a) {
      if (auto smaller = drop_agent(e, a); smaller && admissible(*smaller) && fails(*smaller)) {
        e = std::move(*smaller);
        reduced = true;
      }
    }
  }
  return e;
}

std::vector<std::string> property_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, spec] : registry()) ids.push_back(id);
  ids.push_back("golden");
  std::sort(ids.begin(), ids.end());
  return ids;
}

PropertyVerdict verify_property(const std::string& id, const GeneratorConfig& cfg,
                                const Guards& guards) {
  auto it = registry().find(id);
  if (it == registry().end()) throw parse_error("unknown property id: " + id);
  const PropertySpec& spec = it->second;

  GeneratorConfig gen = cfg;
  gen.ownership = spec.required_class;

  PropertyVerdict verdict{id, cfg.seed, cfg.trials, {}};
  std::vector<std::optional<PropertyFailure>> per_trial(static_cast<size_t>(cfg.trials));
  parallel_for(static_cast<size_t>(cfg.trials), [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      Economy economy = generate_economy(gen, static_cast<int>(t));
      std::optional<std::string> detail = spec.check(economy, guards);
      if (!detail) continue;
      auto fails = [&](const Economy& candidate) {
        return spec.check(candidate, guards).has_value();
      };
      auto admissible = [&](const Economy& candidate) {
        if (candidate.num_agents() > guards.max_agents) return false;
        if (candidate.num_objects() > guards.max_objects) return false;
        EconomyClass k = classify(candidate);
        switch (spec.required_class) {
          case OwnershipClass::Any: return true;
          case OwnershipClass::PrivateOwnership: return k.private_ownership;
          case OwnershipClass::PublicOwnership: return k.public_ownership;
          case OwnershipClass::PrivatePublic: return k.private_public_ownership;
          case OwnershipClass::Het: return k.het;
          case OwnershipClass::NoOverlapping: return k.no_overlapping_ownership;
          case OwnershipClass::NoRedundant: return k.no_redundant_ownership;
        }
        return true;
      };
      Economy shrunk = shrink_economy(economy, fails, admissible);
      std::optional<std::string> final_detail = spec.check(shrunk, guards);
      ENDOW_ASSERT(final_detail.has_value());  // shrinker soundness
      per_trial[t] = PropertyFailure{std::move(shrunk), *final_detail};
    }
  });
  for (auto& f : per_trial)
    if (f) verdict.failures.push_back(std::move(*f));
  return verdict;
}

}  // namespace endow

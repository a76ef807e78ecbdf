#include "endow/special.hpp"

#include <algorithm>

#include "endow/errors.hpp"

namespace endow {

bool universally_acceptable(const Economy& e) {
  for (int a = 0; a < e.num_agents(); ++a)
    for (int o = 0; o < e.num_objects(); ++o)
      if (!e.preference(a).accepts(o)) return false;
  return true;
}

bool no_redundant_via_matching(const Economy& e) {
  // |endowments(C)| <= |C| for all C iff the object->owners bipartite graph
  // has a matching saturating every object (Hall).
  std::vector<int> matched_agent(static_cast<size_t>(e.num_agents()), -1);
  std::vector<char> visited;
  auto try_match = [&](auto&& self, int object) -> bool {
    for (int a : mask_members(e.owners(object))) {
      if (visited[static_cast<size_t>(a)]) continue;
      visited[static_cast<size_t>(a)] = 1;
      if (matched_agent[static_cast<size_t>(a)] == -1 ||
          self(self, matched_agent[static_cast<size_t>(a)])) {
        matched_agent[static_cast<size_t>(a)] = object;
        return true;
      }
    }
    return false;
  };
  for (int o = 0; o < e.num_objects(); ++o) {
    visited.assign(static_cast<size_t>(e.num_agents()), 0);
    if (!try_match(try_match, o)) return false;
  }
  return true;
}

namespace {

bool ownership_within_demand(const Economy& e, int scan_agent_limit) {
  if (e.num_agents() <= scan_agent_limit) {
    for (Mask32 c = 1; c <= e.all_agents(); ++c)
      if (mask_size(endowments(e, c)) > mask_size(c)) return false;
    return true;
  }
  return no_redundant_via_matching(e);
}

}  // namespace

EconomyClass classify(const Economy& e, int scan_agent_limit) {
  EconomyClass out;
  const Mask32 everyone = e.all_agents();
  const bool accept_all = universally_acceptable(e);

  bool disjoint = true;
  bool all_private = true;
  bool all_public = true;
  bool private_or_public = true;
  Mask32 seen_owners = 0;
  Mask32 private_owner_seen = 0;
  bool het = true;
  for (int o = 0; o < e.num_objects(); ++o) {
    Mask32 owners = e.owners(o);
    if (owners & seen_owners) disjoint = false;
    seen_owners |= owners;
    bool priv = mask_size(owners) == 1;
    bool pub = owners == everyone;
    if (!priv) all_private = false;
    if (!pub) all_public = false;
    if (!priv && !pub) private_or_public = false;
    if (priv) {
      if (owners & private_owner_seen) het = false;  // an agent privately owns two objects
      private_owner_seen |= owners;
    }
  }

  out.private_ownership = all_private;
  out.public_ownership = all_public;
  out.private_public_ownership = private_or_public;
  out.het = private_or_public && het;
  out.no_redundant_ownership = accept_all && ownership_within_demand(e, scan_agent_limit);
  // A subtype of no-redundant: disjoint nonempty owner sets already bound
  // |endowments(C)| by |C|.
  out.no_overlapping_ownership = accept_all && disjoint;
  return out;
}

Mask32 public_objects(const Economy& e) {
  Mask32 out = 0;
  for (int o = 0; o < e.num_objects(); ++o)
    if (e.owners(o) == e.all_agents()) out |= bit(o);
  return out;
}

AugmentedEconomy augment(const Economy& e, const std::string& star_label) {
  if (!classify(e).private_public_ownership)
    throw class_error("augmentation requires a private-public-ownership economy");
  if (e.agent_index(star_label) || e.object_index(star_label))
    throw std::invalid_argument("star label collides with an existing label: " + star_label);

  Mask32 pub = public_objects(e);
  EconomyDraft draft = e.to_draft();
  draft.agents.push_back(star_label);
  for (auto& [object, owner_labels] : draft.owners) {
    int idx = *e.object_index(object);
    if (mask_contains(pub, idx)) owner_labels = {star_label};
  }
  // The star agent most prefers the null object: empty acceptable list.
  draft.preferences.emplace_back(star_label, std::vector<std::string>{});

  Validation v = Economy::validate(draft);
  ENDOW_ASSERT(v.ok());
  Economy star = std::move(*v.economy);
  int star_agent = *star.agent_index(star_label);
  std::vector<int> base_to_star(static_cast<size_t>(e.num_agents()));
  for (int a = 0; a < e.num_agents(); ++a)
    base_to_star[static_cast<size_t>(a)] = *star.agent_index(e.agent_label(a));
  return AugmentedEconomy{e, std::move(star), star_agent, std::move(base_to_star)};
}

Allocation restrict_allocation(const AugmentedEconomy& aug, AllocView star_alloc) {
  std::vector<std::int8_t> slots(static_cast<size_t>(aug.base.num_agents()), kNullObject);
  for (int a = 0; a < aug.base.num_agents(); ++a) {
    std::int8_t o = star_alloc[static_cast<size_t>(aug.base_to_star[static_cast<size_t>(a)])];
    if (o == kNullObject) {
      slots[static_cast<size_t>(a)] = kNullObject;
    } else {
      // Object label sets coincide; indices may differ only via sorting, and
      // sorting is shared, so the index carries over.
      ENDOW_ASSERT(aug.base.object_label(o) == aug.star.object_label(o));
      slots[static_cast<size_t>(a)] = o;
    }
  }
  return Allocation(std::move(slots));
}

Allocation embed_allocation(const AugmentedEconomy& aug, AllocView base_alloc) {
  std::vector<std::int8_t> slots(static_cast<size_t>(aug.star.num_agents()), kNullObject);
  for (int a = 0; a < aug.base.num_agents(); ++a)
    slots[static_cast<size_t>(aug.base_to_star[static_cast<size_t>(a)])] =
        base_alloc[static_cast<size_t>(a)];
  return Allocation(std::move(slots));
}

ConsistencyVerdict check_consistency(const Economy& e, Solution f, const Guards& guards) {
  AugmentedEconomy aug = augment(e);
  AllocationSet base_set = solution_set(e, f, guards);
  AllocationSet star_set = solution_set(aug.star, f, guards);

  AllocationSet restricted(e.num_agents(), fingerprint(e));
  for (int i = 0; i < star_set.size(); ++i)
    restricted.add(restrict_allocation(aug, star_set.view(i)).view());
  restricted.sort_unique();

  ConsistencyVerdict verdict;
  verdict.equal = true;
  for (int i = 0; i < base_set.size(); ++i) {
    if (!restricted.contains(base_set.view(i))) {
      verdict.equal = false;
      verdict.only_base.push_back(base_set.allocation(i));
    }
  }
  for (int i = 0; i < restricted.size(); ++i) {
    if (!base_set.contains(restricted.view(i))) {
      verdict.equal = false;
      verdict.only_restricted.push_back(restricted.allocation(i));
    }
  }
  return verdict;
}

}  // namespace endow

#pragma once

#include <string>
#include <vector>

#include "endow/economy.hpp"
#include "endow/solvers.hpp"

namespace endow {

struct EconomyClass {
  bool no_redundant_ownership = false;
  bool no_overlapping_ownership = false;
  bool private_ownership = false;
  bool public_ownership = false;
  bool private_public_ownership = false;
  bool het = false;
  bool operator==(const EconomyClass&) const = default;
};

// Exhaustive coalition scan while 2^|I| stays desk-scale, Hall-type matching
// check beyond that.
EconomyClass classify(const Economy& e, int scan_agent_limit = 20);

bool universally_acceptable(const Economy& e);
// |endowments(C)| <= |C| for every coalition, decided by maximum bipartite
// matching (objects to owners). Equivalent to the exhaustive scan.
bool no_redundant_via_matching(const Economy& e);
Mask32 public_objects(const Economy& e);

struct AugmentedEconomy {
  Economy base;
  Economy star;       // base plus the star agent privately owning all public endowments
  int star_agent = -1;            // index in star
  std::vector<int> base_to_star;  // agent index mapping
};

// Requires a private-public-ownership base (class_error otherwise). The star
// agent most prefers the null object; star_label must be a fresh label.
AugmentedEconomy augment(const Economy& e, const std::string& star_label = "*");

// Drops the star agent and its assignment.
Allocation restrict_allocation(const AugmentedEconomy& aug, AllocView star_alloc);
// Extends a base allocation with the star agent holding null.
Allocation embed_allocation(const AugmentedEconomy& aug, AllocView base_alloc);

struct ConsistencyVerdict {
  bool equal = false;
  std::vector<Allocation> only_base;        // in f(base) but not restricted f(star)
  std::vector<Allocation> only_restricted;  // restricted f(star) but not f(base)
};

// Compares f on the economy with the restriction of f on its augmentation.
ConsistencyVerdict check_consistency(const Economy& e, Solution f, const Guards& guards = {});

}  // namespace endow

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "endow/errors.hpp"

namespace endow {

// Agent and object sets are bitmasks over validated indices. Guards keep
// economies far below 31 members per universe.
using Mask32 = std::uint32_t;
inline constexpr int kMaxUniverse = 31;

constexpr Mask32 bit(int i) { return Mask32{1} << i; }
constexpr bool mask_contains(Mask32 m, int i) { return (m & bit(i)) != 0; }
constexpr bool mask_subset(Mask32 a, Mask32 b) { return (a & ~b) == 0; }
constexpr int mask_size(Mask32 m) { return std::popcount(m); }
constexpr Mask32 full_mask(int n) { return n == 0 ? 0 : (Mask32{1} << n) - 1; }

std::vector<int> mask_members(Mask32 m);

// The null object: an agent assigned kNullObject holds nothing.
inline constexpr std::int8_t kNullObject = -1;

// Nonempty subset of agents.
class Coalition {
 public:
  explicit Coalition(Mask32 members) : mask_(members) {
    ENDOW_ASSERT(members != 0);
  }
  static Coalition of(std::initializer_list<int> agents) {
    Mask32 m = 0;
    for (int a : agents) m |= bit(a);
    return Coalition(m);
  }
  Mask32 mask() const { return mask_; }
  int size() const { return mask_size(mask_); }
  bool contains(int agent) const { return mask_contains(mask_, agent); }
  std::vector<int> members() const { return mask_members(mask_); }
  bool operator==(const Coalition&) const = default;

 private:
  Mask32 mask_;
};

// Strict total order over objects plus the null object, stored as positions:
// rank 0 is most preferred; objects ranked below null_rank are acceptable.
struct PreferenceOrder {
  std::vector<std::int8_t> rank_of;  // indexed by object, values 0..|O| distinct
  std::int8_t null_rank = 0;

  int rank(std::int8_t obj_or_null) const {
    return obj_or_null == kNullObject ? null_rank : rank_of[static_cast<size_t>(obj_or_null)];
  }
  bool accepts(int object) const { return rank_of[static_cast<size_t>(object)] < null_rank; }
  // Acceptable objects in descending preference.
  std::vector<int> acceptable() const;
  bool operator==(const PreferenceOrder&) const = default;
};

// Raw, unvalidated economy description; the shape the file format and the
// generator produce.
struct EconomyDraft {
  std::vector<std::string> agents;
  std::vector<std::string> objects;
  // object label -> owner labels
  std::vector<std::pair<std::string, std::vector<std::string>>> owners;
  // agent label -> acceptable object labels, most preferred first
  std::vector<std::pair<std::string, std::vector<std::string>>> preferences;
};

struct Validation;

// Validated, immutable economy. Labels are canonicalized to lexicographic
// order at validation, so index order == label order everywhere.
class Economy {
 public:
  static Validation validate(const EconomyDraft& draft);

  int num_agents() const { return static_cast<int>(agent_labels_.size()); }
  int num_objects() const { return static_cast<int>(object_labels_.size()); }
  Mask32 all_agents() const { return full_mask(num_agents()); }
  Mask32 all_objects() const { return full_mask(num_objects()); }

  const std::string& agent_label(int i) const { return agent_labels_[static_cast<size_t>(i)]; }
  const std::string& object_label(int o) const { return object_labels_[static_cast<size_t>(o)]; }
  std::optional<int> agent_index(std::string_view label) const;
  std::optional<int> object_index(std::string_view label) const;

  Mask32 owners(int object) const { return owner_masks_[static_cast<size_t>(object)]; }
  const PreferenceOrder& preference(int agent) const { return prefs_[static_cast<size_t>(agent)]; }

  // +1 when x is strictly preferred to y by agent, 0 when x == y, else -1.
  int compare(int agent, std::int8_t x, std::int8_t y) const {
    if (x == y) return 0;
    const PreferenceOrder& p = prefs_[static_cast<size_t>(agent)];
    return p.rank(x) < p.rank(y) ? 1 : -1;
  }
  bool strictly_prefers(int agent, std::int8_t x, std::int8_t y) const {
    return compare(agent, x, y) > 0;
  }
  bool weakly_prefers(int agent, std::int8_t x, std::int8_t y) const {
    return compare(agent, x, y) >= 0;
  }

  EconomyDraft to_draft() const;
  bool operator==(const Economy&) const = default;

 private:
  Economy() = default;
  std::vector<std::string> agent_labels_;
  std::vector<std::string> object_labels_;
  std::vector<Mask32> owner_masks_;
  std::vector<PreferenceOrder> prefs_;
};

struct Validation {
  std::optional<Economy> economy;
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

// Label-based comparison; throws std::invalid_argument on unknown labels.
// x/y may be "" to mean the null object.
int compare_labels(const Economy& e, std::string_view agent, std::string_view x,
                   std::string_view y);

// The endowment operator: objects whose whole owner set lies inside the set.
Mask32 endowments(const Economy& e, Mask32 agents);
inline Mask32 endowments(const Economy& e, Coalition c) { return endowments(e, c.mask()); }

// Matching of agents to objects: at most one real object per agent, each real
// object held by at most one agent, null unrestricted.
class Allocation {
 public:
  explicit Allocation(std::vector<std::int8_t> slots);
  static Allocation all_null(int num_agents);
  static Allocation from_pairs(int num_agents, std::initializer_list<std::pair<int, int>> pairs);

  int num_agents() const { return static_cast<int>(slots_.size()); }
  std::int8_t operator[](int agent) const { return slots_[static_cast<size_t>(agent)]; }
  std::span<const std::int8_t> view() const { return slots_; }
  bool operator==(const Allocation&) const = default;

 private:
  std::vector<std::int8_t> slots_;
};

using AllocView = std::span<const std::int8_t>;

bool alloc_equal(AllocView a, AllocView b);
// Canonical order: agentwise lexicographic, null before every object.
bool alloc_less(AllocView a, AllocView b);
// Objects assigned to members of `agents` (null ignored).
Mask32 assigned_objects(AllocView a, Mask32 agents);
std::string alloc_to_string(const Economy& e, AllocView a);

// Stable 64-bit fingerprint of the validated economy, as lowercase hex.
std::string fingerprint(const Economy& e);

}  // namespace endow

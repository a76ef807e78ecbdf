#include "endow/economy.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "endow/errors.hpp"

namespace endow {

void assert_fail(const char* expr, const char* file, int line) {
  std::ostringstream out;
  out << "invariant violated: " << expr << " at " << file << ":" << line;
  throw std::logic_error(out.str());
}

std::vector<int> mask_members(Mask32 m) {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(mask_size(m)));
  for (Mask32 rest = m; rest; rest &= rest - 1) out.push_back(std::countr_zero(rest));
  return out;
}

std::vector<int> PreferenceOrder::acceptable() const {
  std::vector<int> out(static_cast<size_t>(null_rank), -1);
  for (size_t o = 0; o < rank_of.size(); ++o) {
    if (rank_of[o] < null_rank) out[static_cast<size_t>(rank_of[o])] = static_cast<int>(o);
  }
  return out;
}

namespace {

// Validation works on label-sorted copies so that index order equals label
// order in the validated economy.
struct LabelIndex {
  std::vector<std::string> sorted;
  std::optional<int> find(std::string_view label) const {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), label);
    if (it == sorted.end() || *it != label) return std::nullopt;
    return static_cast<int>(it - sorted.begin());
  }
};

}  // namespace

Validation Economy::validate(const EconomyDraft& draft) {
  Validation result;
  auto fail = [&result](std::string msg) { result.errors.push_back(std::move(msg)); };

  if (draft.agents.empty()) fail("economy has no agents");
  if (static_cast<int>(draft.agents.size()) > kMaxUniverse)
    fail("too many agents (limit " + std::to_string(kMaxUniverse) + ")");
  if (static_cast<int>(draft.objects.size()) > kMaxUniverse)
    fail("too many objects (limit " + std::to_string(kMaxUniverse) + ")");

  std::set<std::string> agent_set(draft.agents.begin(), draft.agents.end());
  if (agent_set.size() != draft.agents.size()) {
    std::set<std::string> seen;
    for (const auto& a : draft.agents)
      if (!seen.insert(a).second) fail("duplicate agent label: " + a);
  }
  std::set<std::string> object_set(draft.objects.begin(), draft.objects.end());
  if (object_set.size() != draft.objects.size()) {
    std::set<std::string> seen;
    for (const auto& o : draft.objects)
      if (!seen.insert(o).second) fail("duplicate object label: " + o);
  }
  for (const auto& o : draft.objects)
    if (agent_set.count(o)) fail("agent and object labels overlap: " + o);
  if (!result.errors.empty()) return result;

  LabelIndex agents{std::vector<std::string>(agent_set.begin(), agent_set.end())};
  LabelIndex objects{std::vector<std::string>(object_set.begin(), object_set.end())};
  const int na = static_cast<int>(agents.sorted.size());
  const int no = static_cast<int>(objects.sorted.size());

  std::vector<Mask32> owner_masks(static_cast<size_t>(no), 0);
  std::vector<bool> owner_seen(static_cast<size_t>(no), false);
  for (const auto& [label, owner_labels] : draft.owners) {
    auto oi = objects.find(label);
    if (!oi) {
      fail("unknown identifier: " + label);
      continue;
    }
    if (owner_seen[static_cast<size_t>(*oi)]) {
      fail("duplicate owner entry for " + label);
      continue;
    }
    owner_seen[static_cast<size_t>(*oi)] = true;
    Mask32 m = 0;
    for (const auto& a : owner_labels) {
      auto ai = agents.find(a);
      if (!ai) {
        fail("unknown identifier: " + a + " (owner of " + label + ")");
        continue;
      }
      m |= bit(*ai);
    }
    if (owner_labels.empty()) fail("empty owner set for " + label);
    owner_masks[static_cast<size_t>(*oi)] = m;
  }
  for (int o = 0; o < no; ++o)
    if (!owner_seen[static_cast<size_t>(o)]) fail("missing owner entry for " + objects.sorted[static_cast<size_t>(o)]);

  std::vector<PreferenceOrder> prefs(static_cast<size_t>(na));
  std::vector<bool> pref_seen(static_cast<size_t>(na), false);
  for (const auto& [label, acceptable] : draft.preferences) {
    auto ai = agents.find(label);
    if (!ai) {
      fail("unknown identifier: " + label);
      continue;
    }
    if (pref_seen[static_cast<size_t>(*ai)]) {
      fail("duplicate preference entry for " + label);
      continue;
    }
    pref_seen[static_cast<size_t>(*ai)] = true;
    PreferenceOrder p;
    p.rank_of.assign(static_cast<size_t>(no), -1);
    std::int8_t next = 0;
    for (const auto& obj : acceptable) {
      auto oi = objects.find(obj);
      if (!oi) {
        fail("unknown identifier: " + obj + " (in ranking of " + label + ")");
        continue;
      }
      if (p.rank_of[static_cast<size_t>(*oi)] != -1) {
        fail("duplicate object in ranking for " + label + ": " + obj);
        continue;
      }
      p.rank_of[static_cast<size_t>(*oi)] = next++;
    }
    p.null_rank = next++;
    // Unacceptable objects sit below the null object in canonical label order.
    for (int o = 0; o < no; ++o)
      if (p.rank_of[static_cast<size_t>(o)] == -1) p.rank_of[static_cast<size_t>(o)] = next++;
    prefs[static_cast<size_t>(*ai)] = std::move(p);
  }
  for (int a = 0; a < na; ++a)
    if (!pref_seen[static_cast<size_t>(a)]) fail("missing preference for " + agents.sorted[static_cast<size_t>(a)]);

  if (!result.errors.empty()) return result;

  Economy e;
  e.agent_labels_ = std::move(agents.sorted);
  e.object_labels_ = std::move(objects.sorted);
  e.owner_masks_ = std::move(owner_masks);
  e.prefs_ = std::move(prefs);
  result.economy = std::move(e);
  return result;
}

std::optional<int> Economy::agent_index(std::string_view label) const {
  auto it = std::lower_bound(agent_labels_.begin(), agent_labels_.end(), label);
  if (it == agent_labels_.end() || *it != label) return std::nullopt;
  return static_cast<int>(it - agent_labels_.begin());
}

std::optional<int> Economy::object_index(std::string_view label) const {
  auto it = std::lower_bound(object_labels_.begin(), object_labels_.end(), label);
  if (it == object_labels_.end() || *it != label) return std::nullopt;
  return static_cast<int>(it - object_labels_.begin());
}

EconomyDraft Economy::to_draft() const {
  EconomyDraft d;
  d.agents = agent_labels_;
  d.objects = object_labels_;
  for (int o = 0; o < num_objects(); ++o) {
    std::vector<std::string> owner_labels;
    for (int a : mask_members(owners(o))) owner_labels.push_back(agent_label(a));
    d.owners.emplace_back(object_label(o), std::move(owner_labels));
  }
  for (int a = 0; a < num_agents(); ++a) {
    std::vector<std::string> acc;
    for (int o : preference(a).acceptable()) acc.push_back(object_label(o));
    d.preferences.emplace_back(agent_label(a), std::move(acc));
  }
  return d;
}

int compare_labels(const Economy& e, std::string_view agent, std::string_view x,
                   std::string_view y) {
  auto ai = e.agent_index(agent);
  if (!ai) throw std::invalid_argument("unknown agent label: " + std::string(agent));
  auto resolve = [&e](std::string_view label) -> std::int8_t {
    if (label.empty()) return kNullObject;
    auto oi = e.object_index(label);
    if (!oi) throw std::invalid_argument("unknown object label: " + std::string(label));
    return static_cast<std::int8_t>(*oi);
  };
  return e.compare(*ai, resolve(x), resolve(y));
}

Mask32 endowments(const Economy& e, Mask32 agents) {
  Mask32 out = 0;
  for (int o = 0; o < e.num_objects(); ++o)
    if (mask_subset(e.owners(o), agents)) out |= bit(o);
  return out;
}

Allocation::Allocation(std::vector<std::int8_t> slots) : slots_(std::move(slots)) {
  Mask32 used = 0;
  for (std::int8_t v : slots_) {
    if (v == kNullObject) continue;
    ENDOW_ASSERT(v >= 0 && v < kMaxUniverse);
    ENDOW_ASSERT(!mask_contains(used, v));  // each real object held at most once
    used |= bit(v);
  }
}

Allocation Allocation::all_null(int num_agents) {
  return Allocation(std::vector<std::int8_t>(static_cast<size_t>(num_agents), kNullObject));
}

Allocation Allocation::from_pairs(int num_agents,
                                  std::initializer_list<std::pair<int, int>> pairs) {
  std::vector<std::int8_t> slots(static_cast<size_t>(num_agents), kNullObject);
  for (auto [agent, object] : pairs) slots[static_cast<size_t>(agent)] = static_cast<std::int8_t>(object);
  return Allocation(std::move(slots));
}

bool alloc_equal(AllocView a, AllocView b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool alloc_less(AllocView a, AllocView b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Mask32 assigned_objects(AllocView a, Mask32 agents) {
  Mask32 out = 0;
  for (Mask32 rest = agents; rest; rest &= rest - 1) {
    std::int8_t o = a[static_cast<size_t>(std::countr_zero(rest))];
    if (o != kNullObject) out |= bit(o);
  }
  return out;
}

std::string alloc_to_string(const Economy& e, AllocView a) {
  std::string out = "{";
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    if (i) out += ", ";
    out += e.agent_label(i) + ":";
    out += a[static_cast<size_t>(i)] == kNullObject ? "-" : e.object_label(a[static_cast<size_t>(i)]);
  }
  return out + "}";
}

std::string fingerprint(const Economy& e) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0x1f;
    h *= 1099511628211ull;
  };
  for (int a = 0; a < e.num_agents(); ++a) mix(e.agent_label(a));
  mix("|");
  for (int o = 0; o < e.num_objects(); ++o) {
    mix(e.object_label(o));
    for (int a : mask_members(e.owners(o))) mix(e.agent_label(a));
    mix(";");
  }
  for (int a = 0; a < e.num_agents(); ++a) {
    for (int o : e.preference(a).acceptable()) mix(e.object_label(o));
    mix(";");
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace endow

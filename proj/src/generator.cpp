#include "endow/generator.hpp"

#include <algorithm>
#include <string>

#include "endow/errors.hpp"
#include "endow/special.hpp"

namespace endow {

std::string_view to_string(OwnershipClass c) {
  switch (c) {
    case OwnershipClass::Any: return "any";
    case OwnershipClass::PrivateOwnership: return "private";
    case OwnershipClass::PublicOwnership: return "public";
    case OwnershipClass::PrivatePublic: return "private-public";
    case OwnershipClass::Het: return "het";
    case OwnershipClass::NoOverlapping: return "no-overlapping";
    case OwnershipClass::NoRedundant: return "no-redundant";
  }
  return "?";
}

namespace {

// splitmix64: stable across platforms, unlike <random> distributions.
struct Rng {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  int in_range(int lo, int hi) { return lo + below(hi - lo + 1); }
  bool chance(double p) { return static_cast<double>(next() >> 11) / 9007199254740992.0 < p; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
      std::swap(v[static_cast<size_t>(i)], v[static_cast<size_t>(below(i + 1))]);
  }
};

bool wants_full_acceptability(OwnershipClass c) {
  return c == OwnershipClass::NoRedundant || c == OwnershipClass::NoOverlapping;
}

EconomyDraft draw_draft(const GeneratorConfig& cfg, Rng& rng) {
  const int na = rng.in_range(cfg.min_agents, cfg.max_agents);
  int no = rng.in_range(cfg.min_objects, cfg.max_objects);
  if (cfg.ownership == OwnershipClass::NoOverlapping) no = std::min(no, na);

  EconomyDraft d;
  for (int a = 0; a < na; ++a) d.agents.push_back(std::to_string(a + 1));
  for (int o = 0; o < no; ++o) d.objects.push_back(std::string(1, static_cast<char>('a' + o)));

  auto owner_labels = [&](Mask32 m) {
    std::vector<std::string> out;
    for (int a : mask_members(m)) out.push_back(d.agents[static_cast<size_t>(a)]);
    return out;
  };

  const Mask32 everyone = full_mask(na);
  switch (cfg.ownership) {
    case OwnershipClass::PublicOwnership:
      for (int o = 0; o < no; ++o) d.owners.emplace_back(d.objects[static_cast<size_t>(o)], owner_labels(everyone));
      break;
    case OwnershipClass::PrivateOwnership:
      for (int o = 0; o < no; ++o)
        d.owners.emplace_back(d.objects[static_cast<size_t>(o)], owner_labels(bit(rng.below(na))));
      break;
    case OwnershipClass::PrivatePublic:
      for (int o = 0; o < no; ++o) {
        Mask32 m = rng.chance(0.4) ? everyone : bit(rng.below(na));
        d.owners.emplace_back(d.objects[static_cast<size_t>(o)], owner_labels(m));
      }
      break;
    case OwnershipClass::Het: {
      std::vector<int> agents(static_cast<size_t>(na));
      for (int a = 0; a < na; ++a) agents[static_cast<size_t>(a)] = a;
      rng.shuffle(agents);
      int tenants = rng.in_range(0, std::min(na, no));
      for (int o = 0; o < no; ++o) {
        Mask32 m = o < tenants ? bit(agents[static_cast<size_t>(o)]) : everyone;
        d.owners.emplace_back(d.objects[static_cast<size_t>(o)], owner_labels(m));
      }
      break;
    }
    case OwnershipClass::NoOverlapping: {
      std::vector<int> agents(static_cast<size_t>(na));
      for (int a = 0; a < na; ++a) agents[static_cast<size_t>(a)] = a;
      rng.shuffle(agents);
      // Deal each object a nonempty group of fresh agents; spare agents may
      // join the last groups.
      int cursor = 0;
      for (int o = 0; o < no; ++o) {
        int spare = na - cursor - (no - o - 1);
        int take = 1 + (spare > 1 ? rng.below(std::min(spare, 3)) : 0);
        Mask32 m = 0;
        for (int k = 0; k < take; ++k) m |= bit(agents[static_cast<size_t>(cursor++)]);
        d.owners.emplace_back(d.objects[static_cast<size_t>(o)], owner_labels(m));
      }
      break;
    }
    case OwnershipClass::Any:
    case OwnershipClass::NoRedundant:
      for (int o = 0; o < no; ++o) {
        Mask32 m;
        if (rng.chance(cfg.private_bias))
          m = bit(rng.below(na));
        else
          m = static_cast<Mask32>(rng.in_range(1, static_cast<int>(everyone)));
        d.owners.emplace_back(d.objects[static_cast<size_t>(o)], owner_labels(m));
      }
      break;
  }

  const double accept =
      wants_full_acceptability(cfg.ownership) ? 1.0 : cfg.acceptability;
  for (int a = 0; a < na; ++a) {
    std::vector<std::string> acceptable;
    for (int o = 0; o < no; ++o)
      if (rng.chance(accept)) acceptable.push_back(d.objects[static_cast<size_t>(o)]);
    rng.shuffle(acceptable);
    d.preferences.emplace_back(d.agents[static_cast<size_t>(a)], std::move(acceptable));
  }
  return d;
}

bool matches_class(const Economy& e, OwnershipClass c) {
  if (c == OwnershipClass::Any) return true;
  EconomyClass k = classify(e);
  switch (c) {
    case OwnershipClass::PrivateOwnership: return k.private_ownership;
    case OwnershipClass::PublicOwnership: return k.public_ownership;
    case OwnershipClass::PrivatePublic: return k.private_public_ownership;
    case OwnershipClass::Het: return k.het;
    case OwnershipClass::NoOverlapping: return k.no_overlapping_ownership;
    case OwnershipClass::NoRedundant: return k.no_redundant_ownership;
    case OwnershipClass::Any: return true;
  }
  return false;
}

std::uint64_t mix_seed(std::uint64_t seed, int trial) {
  Rng r{seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(trial + 1))};
  return r.next();
}

}  // namespace

Economy generate_economy(const GeneratorConfig& cfg, int trial) {
  Rng rng{mix_seed(cfg.seed, trial)};
  constexpr int kRetries = 500;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    EconomyDraft draft = draw_draft(cfg, rng);
    Validation v = Economy::validate(draft);
    ENDOW_ASSERT(v.ok());
    if (matches_class(*v.economy, cfg.ownership)) return std::move(*v.economy);
  }
  throw guard_error("class constraint unsatisfied after bounded retries: " +
                    std::string(to_string(cfg.ownership)));
}

}  // namespace endow

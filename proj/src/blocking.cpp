#include "endow/blocking.hpp"

#include "endow/errors.hpp"
#include "endow/special.hpp"

namespace endow {

bool is_self_enforcing(const Economy& e, Coalition c, AllocView s) {
  for (Mask32 rest = c.mask(); rest; rest &= rest - 1) {
    std::int8_t o = s[static_cast<size_t>(std::countr_zero(rest))];
    if (o == kNullObject) continue;
    if (!mask_subset(e.owners(o), c.mask())) return false;
  }
  return true;
}

bool is_minimal_self_enforcing(const Economy& e, Coalition c, AllocView s) {
  if (!is_self_enforcing(e, c, s)) return false;
  for (Mask32 sub = (c.mask() - 1) & c.mask(); sub; sub = (sub - 1) & c.mask()) {
    if (is_self_enforcing(e, Coalition(sub), s)) return false;
  }
  return true;
}

Mask32 control_closure(const Economy& e, Coalition c, AllocView m) {
  Mask32 reached = c.mask();
  for (int round = 0;; ++round) {
    ENDOW_ASSERT(round <= e.num_agents());
    Mask32 objs = endowments(e, reached);
    Mask32 next = reached;
    for (int j = 0; j < e.num_agents(); ++j) {
      std::int8_t o = m[static_cast<size_t>(j)];
      if (o != kNullObject && mask_contains(objs, o)) next |= bit(j);
    }
    if (next == reached) break;
    reached = next;
  }
  return endowments(e, reached);
}

namespace {

// Condition 1 of weak blocking: everyone in c weakly gains, someone strictly.
bool weak_improvement(const Economy& e, AllocView m, Coalition c, AllocView s) {
  bool strict = false;
  for (Mask32 rest = c.mask(); rest; rest &= rest - 1) {
    int i = std::countr_zero(rest);
    int cmp = e.compare(i, s[static_cast<size_t>(i)], m[static_cast<size_t>(i)]);
    if (cmp < 0) return false;
    if (cmp > 0) strict = true;
  }
  return strict;
}

Mask32 worse_off_agents(const Economy& e, AllocView m, AllocView s) {
  Mask32 out = 0;
  for (int j = 0; j < e.num_agents(); ++j)
    if (e.compare(j, m[static_cast<size_t>(j)], s[static_cast<size_t>(j)]) > 0) out |= bit(j);
  return out;
}

// True when every worse-off agent holds (in m) an object inside `closure`.
bool worse_off_all_evicted(AllocView m, Mask32 worse, Mask32 closure) {
  for (Mask32 rest = worse; rest; rest &= rest - 1) {
    std::int8_t held = m[static_cast<size_t>(std::countr_zero(rest))];
    if (held == kNullObject || !mask_contains(closure, held)) return false;
  }
  return true;
}

// True when no worse-off agent holds (in m) an object inside `closure`.
bool worse_off_none_evicted(AllocView m, Mask32 worse, Mask32 closure) {
  for (Mask32 rest = worse; rest; rest &= rest - 1) {
    std::int8_t held = m[static_cast<size_t>(std::countr_zero(rest))];
    if (held != kNullObject && mask_contains(closure, held)) return false;
  }
  return true;
}

}  // namespace

bool weak_block(const Economy& e, AllocView m, Coalition c, AllocView s) {
  return weak_improvement(e, m, c, s) && is_self_enforcing(e, c, s);
}

bool strong_block(const Economy& e, AllocView m, Coalition c, AllocView s) {
  for (Mask32 rest = c.mask(); rest; rest &= rest - 1) {
    int i = std::countr_zero(rest);
    if (e.compare(i, s[static_cast<size_t>(i)], m[static_cast<size_t>(i)]) <= 0) return false;
  }
  return is_self_enforcing(e, c, s);
}

bool rectification_block(const Economy& e, AllocView m, Coalition c, AllocView s) {
  if (!weak_block(e, m, c, s)) return false;
  Mask32 unaffected = 0;
  for (Mask32 rest = c.mask(); rest; rest &= rest - 1) {
    int i = std::countr_zero(rest);
    if (s[static_cast<size_t>(i)] == m[static_cast<size_t>(i)]) unaffected |= bit(i);
  }
  if (unaffected == 0) return true;
  Mask32 outsider_held = assigned_objects(m, e.all_agents() & ~c.mask());
  // Every nonempty self-enforcing subset of the unaffected members, the whole
  // set included, refuses to pass its redundant endowments to the coalition
  // when outsiders held them in m.
  for (Mask32 sub = unaffected; sub; sub = (sub - 1) & unaffected) {
    if (!is_self_enforcing(e, Coalition(sub), s)) continue;
    Mask32 w = endowments(e, sub);
    for (Mask32 rest = c.mask() & ~sub; rest; rest &= rest - 1) {
      std::int8_t o = s[static_cast<size_t>(std::countr_zero(rest))];
      if (o == kNullObject) continue;
      if (mask_contains(w, o) && mask_contains(outsider_held, o)) return false;
    }
  }
  return true;
}

bool exclusion_block(const Economy& e, AllocView m, Coalition c, AllocView s) {
  for (Mask32 rest = c.mask(); rest; rest &= rest - 1) {
    int i = std::countr_zero(rest);
    if (e.compare(i, s[static_cast<size_t>(i)], m[static_cast<size_t>(i)]) <= 0) return false;
  }
  Mask32 worse = worse_off_agents(e, m, s);
  if (worse == 0) return true;
  return worse_off_all_evicted(m, worse, control_closure(e, c, m));
}

bool refined_exclusion_block(const Economy& e, AllocView m, Coalition c, AllocView s,
                             RefinedVariant variant) {
  if (!weak_improvement(e, m, c, s)) return false;
  Mask32 worse = worse_off_agents(e, m, s);
  if (worse != 0 && !worse_off_all_evicted(m, worse, control_closure(e, c, m)))
    return false;
  Mask32 unaffected = 0;
  for (Mask32 rest = c.mask(); rest; rest &= rest - 1) {
    int i = std::countr_zero(rest);
    if (s[static_cast<size_t>(i)] == m[static_cast<size_t>(i)]) unaffected |= bit(i);
  }
  if (unaffected == 0) return true;

  bool closure_exclusion =
      worse == 0 ||
      worse_off_none_evicted(m, worse, control_closure(e, Coalition(unaffected), m));
  bool unaffected_se = is_self_enforcing(e, Coalition(unaffected), s);
  auto minimal = [&] { return is_minimal_self_enforcing(e, c, s); };

  switch (variant) {
    case RefinedVariant::Standard:
      return (unaffected_se && closure_exclusion) || minimal();
    case RefinedVariant::ThreePrime:
      return closure_exclusion && (unaffected_se || minimal());
    case RefinedVariant::DropSelfEnforcing:
      return closure_exclusion || minimal();
  }
  return false;
}

bool effective_block(const Economy& e, AllocView m, Coalition c, AllocView s) {
  if (!weak_block(e, m, c, s)) return false;
  if (c.mask() == e.all_agents()) return true;
  Mask32 coalition_held = assigned_objects(s, c.mask());
  for (Mask32 sub = c.mask(); sub; sub = (sub - 1) & c.mask()) {
    if (!is_self_enforcing(e, Coalition(sub), s)) continue;
    Mask32 redundant = endowments(e, sub) & ~assigned_objects(s, sub);
    if (redundant & coalition_held) return false;
  }
  return true;
}

bool rectification_star_block(const Economy& e, AllocView m, Coalition c, AllocView s) {
  if (!classify(e).private_public_ownership)
    throw class_error("rectified-star blocking requires a private-public-ownership economy");
  if (!weak_improvement(e, m, c, s)) return false;
  Mask32 outsider_held = assigned_objects(m, e.all_agents() & ~c.mask());
  Mask32 allowed = endowments(e, c.mask()) | (public_objects(e) & ~outsider_held);
  for (Mask32 rest = c.mask(); rest; rest &= rest - 1) {
    std::int8_t o = s[static_cast<size_t>(std::countr_zero(rest))];
    if (o != kNullObject && !mask_contains(allowed, o)) return false;
  }
  return true;
}

std::string_view to_string(BlockingConcept b) {
  switch (b) {
    case BlockingConcept::Weak: return "weak";
    case BlockingConcept::Strong: return "strong";
    case BlockingConcept::Rectification: return "rectification";
    case BlockingConcept::Exclusion: return "exclusion";
    case BlockingConcept::RefinedExclusion: return "refined-exclusion";
    case BlockingConcept::RefinedExclusion3Prime: return "refined-exclusion-3prime";
    case BlockingConcept::Effective: return "effective";
    case BlockingConcept::RectificationStar: return "rectification-star";
  }
  return "?";
}

std::optional<BlockingConcept> blocking_from_string(std::string_view s) {
  for (BlockingConcept b :
       {BlockingConcept::Weak, BlockingConcept::Strong, BlockingConcept::Rectification,
        BlockingConcept::Exclusion, BlockingConcept::RefinedExclusion,
        BlockingConcept::RefinedExclusion3Prime, BlockingConcept::Effective,
        BlockingConcept::RectificationStar}) {
    if (to_string(b) == s) return b;
  }
  return std::nullopt;
}

bool blocks(const Economy& e, BlockingConcept concept_tag, AllocView m, Coalition c,
            AllocView s) {
  switch (concept_tag) {
    case BlockingConcept::Weak: return weak_block(e, m, c, s);
    case BlockingConcept::Strong: return strong_block(e, m, c, s);
    case BlockingConcept::Rectification: return rectification_block(e, m, c, s);
    case BlockingConcept::Exclusion: return exclusion_block(e, m, c, s);
    case BlockingConcept::RefinedExclusion:
      return refined_exclusion_block(e, m, c, s, RefinedVariant::Standard);
    case BlockingConcept::RefinedExclusion3Prime:
      return refined_exclusion_block(e, m, c, s, RefinedVariant::ThreePrime);
    case BlockingConcept::Effective: return effective_block(e, m, c, s);
    case BlockingConcept::RectificationStar: return rectification_star_block(e, m, c, s);
  }
  return false;
}

bool certificate_replays(const Economy& e, const BlockingCertificate& cert, AllocView blocked) {
  if (alloc_equal(cert.via.view(), blocked)) return false;
  return blocks(e, cert.kind, blocked, cert.coalition, cert.via.view());
}

}  // namespace endow

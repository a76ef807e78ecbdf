#pragma once

#include <optional>
#include <string_view>

#include "endow/economy.hpp"

namespace endow {

// Coalition whose assignments under s all come from its own endowments or
// the null object.
bool is_self_enforcing(const Economy& e, Coalition c, AllocView s);

// Self-enforcing with no self-enforcing strict nonempty sub-coalition.
bool is_minimal_self_enforcing(const Economy& e, Coalition c, AllocView s);

// Control closure: endowments of the least agent set containing c that is
// closed under "holders (in m) of objects the set already endows".
Mask32 control_closure(const Economy& e, Coalition c, AllocView m);

// Blocking predicates. `m` is the allocation under attack, `s` the candidate
// the coalition proposes; callers guarantee s != m.
bool weak_block(const Economy& e, AllocView m, Coalition c, AllocView s);
bool strong_block(const Economy& e, AllocView m, Coalition c, AllocView s);
bool rectification_block(const Economy& e, AllocView m, Coalition c, AllocView s);
bool exclusion_block(const Economy& e, AllocView m, Coalition c, AllocView s);

enum class RefinedVariant {
  Standard,            // condition 3 as defined
  ThreePrime,          // 3': the closure exclusion applies in both cases
  DropSelfEnforcing,   // diagnostic: 3(a) without the self-enforcement clause
};
bool refined_exclusion_block(const Economy& e, AllocView m, Coalition c, AllocView s,
                             RefinedVariant variant = RefinedVariant::Standard);

bool effective_block(const Economy& e, AllocView m, Coalition c, AllocView s);

// Requires a private-public-ownership economy (throws class_error otherwise):
// the coalition may also reach public endowments nobody outside holds in m.
bool rectification_star_block(const Economy& e, AllocView m, Coalition c, AllocView s);

enum class BlockingConcept {
  Weak,
  Strong,
  Rectification,
  Exclusion,
  RefinedExclusion,
  RefinedExclusion3Prime,
  Effective,
  RectificationStar,
};

std::string_view to_string(BlockingConcept b);
std::optional<BlockingConcept> blocking_from_string(std::string_view s);

bool blocks(const Economy& e, BlockingConcept concept_tag, AllocView m, Coalition c,
            AllocView s);

// Witness that `concept_tag` blocking of some allocation holds via (coalition, via).
struct BlockingCertificate {
  BlockingConcept kind;
  Coalition coalition;
  Allocation via;
};

bool certificate_replays(const Economy& e, const BlockingCertificate& cert, AllocView blocked);

}  // namespace endow

#include "endow/solvers.hpp"

#include <stdexcept>

#include "endow/errors.hpp"
#include "endow/parallel.hpp"
#include "endow/special.hpp"

namespace endow {

std::string_view to_string(Solution s) {
  switch (s) {
    case Solution::WeakCore: return "weak";
    case Solution::StrongCore: return "strong";
    case Solution::RectifiedCore: return "rectified";
    case Solution::ExclusionCore: return "exclusion";
    case Solution::RefinedExclusionCore: return "refined-exclusion";
    case Solution::RefinedExclusionCore3Prime: return "refined-exclusion-3prime";
    case Solution::EffectiveCore: return "effective";
    case Solution::RectifiedCoreStar: return "rectified-star";
    case Solution::ParetoEfficient: return "pe";
    case Solution::Yrmh: return "yrmh";
    case Solution::RefinedExclusionWeakened: return "refined-exclusion-weakened";
  }
  return "?";
}

std::optional<Solution> solution_from_string(std::string_view s) {
  for (Solution sol :
       {Solution::WeakCore, Solution::StrongCore, Solution::RectifiedCore,
        Solution::ExclusionCore, Solution::RefinedExclusionCore,
        Solution::RefinedExclusionCore3Prime, Solution::EffectiveCore,
        Solution::RectifiedCoreStar, Solution::ParetoEfficient, Solution::Yrmh,
        Solution::RefinedExclusionWeakened}) {
    if (to_string(sol) == s) return sol;
  }
  return std::nullopt;
}

namespace {

struct ScanPlan {
  BlockingConcept concept_tag;
  bool grand_coalition_only = false;  // Pareto efficiency: domination == grand-coalition weak block
};

ScanPlan plan_for(Solution s) {
  switch (s) {
    case Solution::WeakCore: return {BlockingConcept::Strong};
    case Solution::StrongCore: return {BlockingConcept::Weak};
    case Solution::RectifiedCore: return {BlockingConcept::Rectification};
    case Solution::ExclusionCore: return {BlockingConcept::Exclusion};
    case Solution::RefinedExclusionCore: return {BlockingConcept::RefinedExclusion};
    case Solution::RefinedExclusionCore3Prime: return {BlockingConcept::RefinedExclusion3Prime};
    case Solution::EffectiveCore: return {BlockingConcept::Effective};
    case Solution::RectifiedCoreStar: return {BlockingConcept::RectificationStar};
    case Solution::ParetoEfficient: return {BlockingConcept::Weak, true};
    default:
      throw std::invalid_argument("no blocking scan for solution " +
                                  std::string(to_string(s)));
  }
}

// First blocking pair under the deterministic scan (coalition-major,
// allocations in canonical order), or nullopt when m is unblocked.
std::optional<BlockingCertificate> find_block(const Economy& e, const AllocationSet& all,
                                              const ScanPlan& plan, int m_idx) {
  AllocView m = all.view(m_idx);
  const Mask32 everyone = e.all_agents();
  for (Mask32 c = 1; c <= everyone; ++c) {
    if (plan.grand_coalition_only && c != everyone) continue;
    Coalition coalition(c);
    for (int s_idx = 0; s_idx < all.size(); ++s_idx) {
      if (s_idx == m_idx) continue;
      if (blocks(e, plan.concept_tag, m, coalition, all.view(s_idx)))
        return BlockingCertificate{plan.concept_tag, coalition, all.allocation(s_idx)};
    }
  }
  return std::nullopt;
}

bool is_blocked(const Economy& e, const AllocationSet& all, Solution sol, int m_idx) {
  if (sol == Solution::RefinedExclusionWeakened) {
    AllocView m = all.view(m_idx);
    for (Mask32 c = 1; c <= e.all_agents(); ++c) {
      Coalition coalition(c);
      for (int s_idx = 0; s_idx < all.size(); ++s_idx) {
        if (s_idx == m_idx) continue;
        if (refined_exclusion_block(e, m, coalition, all.view(s_idx),
                                    RefinedVariant::DropSelfEnforcing))
          return true;
      }
    }
    return false;
  }
  return find_block(e, all, plan_for(sol), m_idx).has_value();
}

// The rectified core* is the rectified core of the augmented economy, read
// back through restriction. Membership is decided there; the relaxed-access
// blocking predicate certifies exclusions (every augmented rectification
// block restricts to one).
std::vector<char> rectified_star_mask(const Economy& e, const AllocationSet& all,
                                      const Guards& guards) {
  AugmentedEconomy aug = augment(e);
  Guards star_guards = guards;
  star_guards.max_agents = std::max(guards.max_agents, aug.star.num_agents());
  AllocationSet star_all = enumerate_allocations(aug.star, star_guards);
  std::vector<char> star_core = solution_mask(aug.star, star_all, Solution::RectifiedCore,
                                              star_guards);
  std::vector<char> member(static_cast<size_t>(all.size()), 0);
  for (int i = 0; i < star_all.size(); ++i) {
    if (!star_core[static_cast<size_t>(i)]) continue;
    Allocation restricted = restrict_allocation(aug, star_all.view(i));
    auto idx = all.index_of(restricted.view());
    ENDOW_ASSERT(idx.has_value());
    member[static_cast<size_t>(*idx)] = 1;
  }
  return member;
}

}  // namespace

std::vector<char> solution_mask(const Economy& e, const AllocationSet& all, Solution s,
                                const Guards& guards) {
  std::vector<char> member(static_cast<size_t>(all.size()), 0);
  if (s == Solution::Yrmh) {
    AllocationSet outcomes = mechanism_outcomes(e, {}, guards);
    for (int i = 0; i < outcomes.size(); ++i) {
      auto idx = all.index_of(outcomes.view(i));
      ENDOW_ASSERT(idx.has_value());
      member[static_cast<size_t>(*idx)] = 1;
    }
    return member;
  }
  if (s == Solution::RectifiedCoreStar) {
    if (!classify(e).private_public_ownership)
      throw class_error("rectified-star requires a private-public-ownership economy");
    return rectified_star_mask(e, all, guards);
  }
  parallel_for(static_cast<size_t>(all.size()), [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m)
      member[m] = is_blocked(e, all, s, static_cast<int>(m)) ? 0 : 1;
  });
  return member;
}

AllocationSet solution_set(const Economy& e, Solution s, const Guards& guards) {
  AllocationSet all = enumerate_allocations(e, guards);
  return subset_from_mask(all, solution_mask(e, all, s, guards));
}

SolutionReport solve(const Economy& e, Solution s, const Guards& guards) {
  if (s == Solution::Yrmh || s == Solution::RefinedExclusionWeakened)
    throw std::invalid_argument("solve has no certificate form for " +
                                std::string(to_string(s)));
  if (s == Solution::RectifiedCoreStar && !classify(e).private_public_ownership)
    throw class_error("rectified-star requires a private-public-ownership economy");
  AllocationSet all = enumerate_allocations(e, guards);
  ScanPlan plan = plan_for(s);

  std::vector<std::optional<BlockingCertificate>> certs(static_cast<size_t>(all.size()));
  if (s == Solution::RectifiedCoreStar) {
    std::vector<char> member = rectified_star_mask(e, all, guards);
    parallel_for(static_cast<size_t>(all.size()), [&](std::size_t begin, std::size_t end) {
      for (std::size_t m = begin; m < end; ++m) {
        if (member[m]) continue;
        certs[m] = find_block(e, all, plan, static_cast<int>(m));
        ENDOW_ASSERT(certs[m].has_value());
      }
    });
  } else {
    parallel_for(static_cast<size_t>(all.size()), [&](std::size_t begin, std::size_t end) {
      for (std::size_t m = begin; m < end; ++m)
        certs[m] = find_block(e, all, plan, static_cast<int>(m));
    });
  }

  SolutionReport report{s, all.fingerprint(), {}, {}};
  for (int m = 0; m < all.size(); ++m) {
    if (certs[static_cast<size_t>(m)])
      report.excluded.push_back({all.allocation(m), std::move(*certs[static_cast<size_t>(m)])});
    else
      report.members.push_back(all.allocation(m));
  }
  return report;
}

RelationReport relation_report(const Economy& e, const Guards& guards) {
  const std::vector<Solution> solutions = {
      Solution::WeakCore,       Solution::StrongCore,
      Solution::RectifiedCore,  Solution::ExclusionCore,
      Solution::RefinedExclusionCore, Solution::EffectiveCore,
      Solution::ParetoEfficient, Solution::Yrmh,
  };
  AllocationSet all = enumerate_allocations(e, guards);
  std::vector<std::vector<char>> masks;
  masks.reserve(solutions.size());
  for (Solution s : solutions) masks.push_back(solution_mask(e, all, s, guards));

  RelationReport report{all.fingerprint(), solutions, {}};
  for (size_t a = 0; a < solutions.size(); ++a) {
    for (size_t b = a + 1; b < solutions.size(); ++b) {
      PairRelation rel{solutions[a], solutions[b], RelationVerdict::Equal, {}, {}};
      for (int i = 0; i < all.size(); ++i) {
        bool in_a = masks[a][static_cast<size_t>(i)];
        bool in_b = masks[b][static_cast<size_t>(i)];
        if (in_a && !in_b && !rel.left_only) rel.left_only = all.allocation(i);
        if (in_b && !in_a && !rel.right_only) rel.right_only = all.allocation(i);
      }
      if (rel.left_only && rel.right_only)
        rel.verdict = RelationVerdict::Incomparable;
      else if (rel.left_only)
        rel.verdict = RelationVerdict::StrictSuperset;
      else if (rel.right_only)
        rel.verdict = RelationVerdict::StrictSubset;
      else
        rel.verdict = RelationVerdict::Equal;
      report.pairs.push_back(std::move(rel));
    }
  }
  return report;
}

}  // namespace endow

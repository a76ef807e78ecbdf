#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "endow/allocations.hpp"
#include "endow/blocking.hpp"
#include "endow/mechanism.hpp"

namespace endow {

enum class Solution {
  WeakCore,
  StrongCore,
  RectifiedCore,
  ExclusionCore,
  RefinedExclusionCore,
  RefinedExclusionCore3Prime,
  EffectiveCore,
  RectifiedCoreStar,
  ParetoEfficient,
  Yrmh,
  RefinedExclusionWeakened,  // diagnostic variant, not a CLI cores concept
};

std::string_view to_string(Solution s);
std::optional<Solution> solution_from_string(std::string_view s);

// Membership flags over the canonical allocation set (1 = in the solution).
std::vector<char> solution_mask(const Economy& e, const AllocationSet& all, Solution s,
                                const Guards& guards = {});

AllocationSet solution_set(const Economy& e, Solution s, const Guards& guards = {});

struct ExcludedAllocation {
  Allocation allocation;
  BlockingCertificate certificate;
};

// Exact solution set plus one replayable certificate per excluded allocation,
// found under the deterministic (coalition-major, canonical allocation) scan.
struct SolutionReport {
  Solution concept_tag;
  std::string fingerprint;
  std::vector<Allocation> members;
  std::vector<ExcludedAllocation> excluded;
};

// Defined for the blocking-backed concepts and ParetoEfficient; Yrmh and the
// weakened diagnostic have no certificate form.
SolutionReport solve(const Economy& e, Solution s, const Guards& guards = {});

enum class RelationVerdict { Equal, StrictSubset, StrictSuperset, Incomparable };

struct PairRelation {
  Solution left;
  Solution right;
  RelationVerdict verdict;
  std::optional<Allocation> left_only;   // witness in left \ right
  std::optional<Allocation> right_only;  // witness in right \ left
};

struct RelationReport {
  std::string fingerprint;
  std::vector<Solution> solutions;
  std::vector<PairRelation> pairs;
};

// Pairwise inclusion verdicts over {weak, strong, rectified, exclusion,
// refined-exclusion, effective, pe, yrmh} with witnesses for strictness.
RelationReport relation_report(const Economy& e, const Guards& guards = {});

}  // namespace endow
